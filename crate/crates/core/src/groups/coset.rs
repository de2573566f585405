//! Characteristic-polynomial histograms over similitude cosets G·σ_m.

use std::collections::HashMap;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bsgs::GroupAtlas;
use super::charpoly::{char_poly, poly_mul};
use super::forms::{
    lower_block, similitude, split_hermitian_space, standard_hermitian_space,
    standard_symplectic_space, upper_block, FormedSpace,
};
use super::generators::{sl_generators, sp_generators, split_su_generators, su_generators};
use super::matrix::Matrix;
use super::GroupError;
use crate::histogram::CharPolyHistogram;
use crate::parallel::indexed_rng;
use crate::residue::{classify_prime, EisensteinRing, Field, InertField, PrimeField, Splitting};

/// Largest group we enumerate element by element.
pub const MAX_ENUMERATION: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum HistogramMode {
    Enumerate,
    Sample { n: u64, seed: u64 },
}

/// The isometry group whose similitude coset is histogrammed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "group")]
pub enum CosetGroup {
    Sl { n: usize },
    Sp { g: usize },
    /// Rank-g unitary group over Z[ω]/ℓ; inert or split according to ℓ.
    Su { g: usize },
}

impl CosetGroup {
    /// Degree of the characteristic polynomials over Z/ℓ.
    pub fn key_degree(&self) -> usize {
        match *self {
            CosetGroup::Sl { n } => n,
            CosetGroup::Sp { g } | CosetGroup::Su { g } => 2 * g,
        }
    }
}

/// Histogram of `key(h·c)` for h in the group and c in `shifts`.
///
/// Enumeration walks the BSGS tree in parallel over first-level branches;
/// sampling draws element i from the stream `(seed, i)`, picking the shift
/// uniformly and then a uniform group element.
pub fn coset_histogram<F, K>(
    atlas: &GroupAtlas<F>,
    shifts: &[Matrix<F::Elem>],
    ell: u32,
    degree: usize,
    key: K,
    mode: HistogramMode,
) -> Result<CharPolyHistogram, GroupError>
where
    F: Field,
    K: Fn(&Matrix<F::Elem>) -> Vec<u32> + Sync,
{
    let f = atlas.field();
    let counts = match mode {
        HistogramMode::Enumerate => {
            let order = atlas.order();
            if order > MAX_ENUMERATION {
                return Err(GroupError::EnumerationTooLarge(order));
            }
            (0..atlas.branch_count())
                .into_par_iter()
                .map(|b| {
                    let mut local = HashMap::new();
                    atlas.for_each_element_in_branch(b, |h| {
                        for c in shifts {
                            *local.entry(key(&h.mul(f, c))).or_insert(0u64) += 1;
                        }
                    });
                    local
                })
                .reduce(HashMap::new, merge_maps)
        }
        HistogramMode::Sample { n, seed } => (0..n)
            .into_par_iter()
            .fold(HashMap::new, |mut local, i| {
                let mut rng = indexed_rng(seed, i);
                let c = &shifts[rng.random_range(0..shifts.len())];
                let h = atlas.random_element(&mut rng);
                *local.entry(key(&h.mul(f, c))).or_insert(0u64) += 1;
                local
            })
            .reduce(HashMap::new, merge_maps),
    };
    let mut hist = CharPolyHistogram::new(ell, degree);
    for (k, v) in counts {
        hist.add(k, v).map_err(|e| GroupError::Internal(e.to_string()))?;
    }
    Ok(hist)
}

fn merge_maps(a: HashMap<Vec<u32>, u64>, b: HashMap<Vec<u32>, u64>) -> HashMap<Vec<u32>, u64> {
    let (mut a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// The characteristic polynomial over Z/ℓ of an F_{ℓ²}-linear map viewed
/// as F_ℓ-linear: N(h) = h·h̄ for its F_{ℓ²} characteristic polynomial h.
pub fn norm_char_poly(f: &InertField, m: &Matrix<[u32; 2]>) -> Vec<u32> {
    let h = char_poly(f, m);
    let hbar: Vec<[u32; 2]> = h.iter().map(|&c| f.conj(c)).collect();
    poly_mul(f, &h, &hbar)
        .into_iter()
        .map(|c| {
            debug_assert_eq!(c[1], 0);
            c[0]
        })
        .collect()
}

/// Characteristic polynomial of diag(A, B) on V(λ) ⊕ V(λ̄) from the blocks.
pub fn split_char_poly(f: &PrimeField, m: &Matrix<u32>) -> Vec<u32> {
    let g = m.dim() / 2;
    poly_mul(f, &char_poly(f, &upper_block(f, m, g)), &char_poly(f, &lower_block(f, m, g)))
}

/// Histogram of characteristic polynomials over G·σ_m.
///
/// For unitary groups, `det_classes` lists allowed determinants (as a + bω
/// in Z[ω]/ℓ, read at λ when ℓ splits) of the similitudes; the default is
/// the single class of σ_m itself, i.e. the coset SU·σ_m.
pub fn coset_charpoly_histogram(
    group: CosetGroup,
    ell: u32,
    multiplier: u32,
    det_classes: Option<&[(i64, i64)]>,
    mode: HistogramMode,
) -> Result<CharPolyHistogram, GroupError> {
    if multiplier.is_multiple_of(ell) {
        return Err(GroupError::NoSimilitude);
    }
    let degree = group.key_degree();
    if det_classes.is_some() && !matches!(group, CosetGroup::Su { .. }) {
        return Err(GroupError::IncompatibleKind);
    }
    match group {
        CosetGroup::Sl { n } => {
            let f = PrimeField::new(ell)?;
            if ell == 2 {
                return Err(GroupError::EvenCharacteristic);
            }
            let space = FormedSpace::plain(f, n);
            let atlas = GroupAtlas::new(f, n, sl_generators(&f, n))?;
            let sigma = similitude(&space, multiplier % ell)?;
            coset_histogram(&atlas, &[sigma], ell, degree, |m| char_poly(&f, m), mode)
        }
        CosetGroup::Sp { g } => {
            let space = standard_symplectic_space(g, ell)?;
            let f = *space.field();
            let atlas = GroupAtlas::new(f, 2 * g, sp_generators(&space)?)?;
            let sigma = similitude(&space, multiplier % ell)?;
            coset_histogram(&atlas, &[sigma], ell, degree, |m| char_poly(&f, m), mode)
        }
        CosetGroup::Su { g } => match classify_prime(ell)?.splitting() {
            Splitting::Ramified => Err(GroupError::RamifiedUnitary),
            Splitting::Split => {
                let space = split_hermitian_space(g, ell)?;
                let f = *space.field();
                let atlas = GroupAtlas::new(f, 2 * g, split_su_generators(&space)?)?;
                let sigma = similitude(&space, multiplier % ell)?;
                let ring = EisensteinRing::new(ell)?;
                let classes: Vec<u32> = match det_classes {
                    None => vec![1],
                    Some(cs) => cs.iter().map(|&(a, b)| ring.from_integers(a, b).coords()[0]).collect(),
                };
                let shifts = classes
                    .iter()
                    .map(|&c| {
                        let mut d = vec![1u32; g];
                        d[0] = c;
                        let inv = f.inv(c).ok_or(GroupError::NoSimilitude)?;
                        let mut e = vec![1u32; g];
                        e[0] = inv;
                        let shift = Matrix::diagonal(&f, &d).direct_sum(&f, &Matrix::diagonal(&f, &e));
                        Ok(shift.mul(&f, &sigma))
                    })
                    .collect::<Result<Vec<_>, GroupError>>()?;
                coset_histogram(&atlas, &shifts, ell, degree, |m| split_char_poly(&f, m), mode)
            }
            Splitting::Inert => {
                let space = standard_hermitian_space(g, ell)?;
                let f = *space.field();
                let atlas = GroupAtlas::new(f, g, su_generators(&space)?)?;
                let sigma = similitude(&space, f.from_int(multiplier as i64))?;
                let base_det = sigma.det(&f);
                let classes: Vec<[u32; 2]> = match det_classes {
                    None => vec![base_det],
                    Some(cs) => cs
                        .iter()
                        .map(|&(a, b)| [a.rem_euclid(ell as i64) as u32, b.rem_euclid(ell as i64) as u32])
                        .collect(),
                };
                let base_inv = f.inv(base_det).ok_or(GroupError::NoSimilitude)?;
                let shifts = classes
                    .iter()
                    .map(|&delta| {
                        let c = f.mul(delta, base_inv);
                        if f.mul(c, f.conj(c)) != f.one() {
                            return Err(GroupError::NoSimilitude);
                        }
                        let mut d = vec![f.one(); g];
                        d[0] = c;
                        Ok(Matrix::diagonal(&f, &d).mul(&f, &sigma))
                    })
                    .collect::<Result<Vec<_>, GroupError>>()?;
                coset_histogram(&atlas, &shifts, ell, degree, |m| norm_char_poly(&f, m), mode)
            }
        },
    }
}
