//! Standard generating sets for SL, Sp and SU.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::bsgs::bsgs_order;
use super::forms::{split_embed, FormKind, FormedSpace};
use super::matrix::Matrix;
use super::order::su_order;
use super::GroupError;
use crate::residue::{Field, InertField, PrimeField};

/// Root-group transvections I + E_{i,i+1} and I + E_{i+1,i}.
pub fn sl_generators<F: Field>(field: &F, n: usize) -> Vec<Matrix<F::Elem>> {
    let one = field.one();
    (0..n.saturating_sub(1))
        .flat_map(|i| {
            [
                Matrix::elementary(field, n, i, i + 1, one),
                Matrix::elementary(field, n, i + 1, i, one),
            ]
        })
        .collect()
}

/// x ↦ x + ⟨x, v⟩·v.
pub fn symplectic_transvection(space: &FormedSpace<PrimeField>, v: &[u32]) -> Matrix<u32> {
    let f = space.field();
    let n = space.dim();
    // ⟨x, v⟩ = ᵗx·G·v, so the row functional is G·v.
    let gv = space.gram().apply(f, v);
    let mut m = Matrix::identity(f, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, f.add(m.get(i, j), f.mul(v[i], gv[j])));
        }
    }
    m
}

/// Transvections along e_i, f_i and f_i + f_{i+1} in the interleaved basis.
pub fn sp_generators(space: &FormedSpace<PrimeField>) -> Result<Vec<Matrix<u32>>, GroupError> {
    if space.kind() != FormKind::Symplectic {
        return Err(GroupError::IncompatibleKind);
    }
    let n = space.dim();
    let g = n / 2;
    let unit = |i: usize| {
        let mut v = vec![0u32; n];
        v[i] = 1;
        v
    };
    let mut vectors: Vec<Vec<u32>> = Vec::new();
    for i in 0..g {
        vectors.push(unit(2 * i));
        vectors.push(unit(2 * i + 1));
    }
    for i in 0..g.saturating_sub(1) {
        let mut v = unit(2 * i + 1);
        v[2 * i + 3] = 1;
        vectors.push(v);
    }
    Ok(vectors.iter().map(|v| symplectic_transvection(space, v)).collect())
}

/// SL_g generators pushed through τ ↦ diag(τ, ᵗτ⁻¹).
pub fn split_su_generators(space: &FormedSpace<PrimeField>) -> Result<Vec<Matrix<u32>>, GroupError> {
    if space.kind() != FormKind::SplitHermitian {
        return Err(GroupError::IncompatibleKind);
    }
    let f = space.field();
    sl_generators(f, space.dim() / 2)
        .iter()
        .map(|t| split_embed(f, t))
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuTableEntry {
    pub n: usize,
    pub ell: u32,
    pub seed: u64,
    /// Each generator as rows of [a, b] pairs meaning a + bω.
    pub generators: Vec<Vec<Vec<[u32; 2]>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuTable {
    pub format: u32,
    pub description: String,
    pub entries: Vec<SuTableEntry>,
}

const SU_TABLE_JSON: &str = include_str!("../../data/su_generators.json");

pub fn su_table() -> &'static SuTable {
    static TABLE: OnceLock<SuTable> = OnceLock::new();
    TABLE.get_or_init(|| serde_json::from_str(SU_TABLE_JSON).expect("checked-in SU table parses"))
}

/// Generators of SU_n(F_{ℓ²}) for the identity Hermitian form, from the
/// checked-in table.
pub fn su_generators(space: &FormedSpace<InertField>) -> Result<Vec<Matrix<[u32; 2]>>, GroupError> {
    if space.kind() != FormKind::Hermitian {
        return Err(GroupError::IncompatibleKind);
    }
    let n = space.dim();
    let ell = space.field().ell();
    if n == 1 {
        return Ok(Vec::new());
    }
    let entry = su_table()
        .entries
        .iter()
        .find(|e| e.n == n && e.ell == ell)
        .ok_or(GroupError::SuTableMissing { n, ell })?;
    entry
        .generators
        .iter()
        .map(|rows| Matrix::from_rows(rows.clone()).ok_or(GroupError::MalformedTable))
        .collect()
}

fn random_skew_hermitian<R: Rng>(f: &InertField, n: usize, rng: &mut R) -> Matrix<[u32; 2]> {
    let ell = f.ell();
    let mut k = Matrix::zero(f, n);
    for i in 0..n {
        // a + bω is skew exactly when b = 2a.
        let a = rng.random_range(0..ell);
        k.set(i, i, [a, (2 * a) % ell]);
        for j in i + 1..n {
            let x = [rng.random_range(0..ell), rng.random_range(0..ell)];
            k.set(i, j, x);
            k.set(j, i, f.neg(f.conj(x)));
        }
    }
    k
}

/// A determinant-one unitary matrix from the Cayley transform of a random
/// skew-Hermitian matrix, or `None` when I + K is singular.
fn random_special_unitary<R: Rng>(f: &InertField, n: usize, rng: &mut R) -> Option<Matrix<[u32; 2]>> {
    let k = random_skew_hermitian(f, n, rng);
    let id = Matrix::identity(f, n);
    let u = id.sub(f, &k).mul(f, &id.add(f, &k).inverse(f)?);
    let d = u.det(f);
    let mut fix = vec![f.one(); n];
    fix[0] = f.inv(d)?;
    Some(Matrix::diagonal(f, &fix).mul(f, &u))
}

/// Seeded search: accumulate random special unitary matrices until they
/// generate a group of the full order.
pub fn search_su_generators(
    space: &FormedSpace<InertField>,
    seed: u64,
) -> Result<Vec<Matrix<[u32; 2]>>, GroupError> {
    if space.kind() != FormKind::Hermitian {
        return Err(GroupError::IncompatibleKind);
    }
    let f = space.field();
    let n = space.dim();
    if n == 1 {
        return Ok(Vec::new());
    }
    let target = su_order(n as u32, f.ell() as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = Vec::new();
    for _ in 0..64 {
        let Some(u) = random_special_unitary(f, n, &mut rng) else { continue };
        if u.is_identity(f) {
            continue;
        }
        debug_assert_eq!(space.contains(&u), Ok(true));
        gens.push(u);
        if gens.len() >= 2 && bsgs_order(f, n, &gens)? == target {
            return Ok(gens);
        }
    }
    Err(GroupError::GeneratorSearchFailed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::forms::{split_hermitian_space, standard_hermitian_space, standard_symplectic_space};
    use crate::groups::order::{sl_order, sp_order};

    #[test]
    fn sl2_5_order() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(bsgs_order(&f, 2, &sl_generators(&f, 2)).unwrap(), 120);
        assert_eq!(sl_order(2, 5), 120);
    }

    #[test]
    fn sp_generators_are_isometries_and_generate() {
        for (g, ell) in [(1, 3), (1, 5), (2, 3), (2, 5), (3, 3)] {
            let s = standard_symplectic_space(g, ell).unwrap();
            let gens = sp_generators(&s).unwrap();
            for m in &gens {
                assert!(s.contains(m).unwrap());
            }
            assert_eq!(bsgs_order(s.field(), 2 * g, &gens).unwrap(), sp_order(g as u32, ell as u64));
        }
    }

    #[test]
    fn sp2_is_sl2() {
        let s = standard_symplectic_space(1, 7).unwrap();
        let f = s.field();
        let a = bsgs_order(f, 2, &sp_generators(&s).unwrap()).unwrap();
        let b = bsgs_order(f, 2, &sl_generators(f, 2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn su_table_entries_are_special_unitary() {
        for e in &su_table().entries {
            let s = standard_hermitian_space(e.n, e.ell).unwrap();
            let gens = su_generators(&s).unwrap();
            assert!(!gens.is_empty());
            for m in &gens {
                assert!(s.contains(m).unwrap(), "n={} ell={}", e.n, e.ell);
            }
        }
    }

    #[test]
    fn su_table_is_reproducible_from_seeds() {
        for e in su_table().entries.iter().filter(|e| e.n <= 3) {
            let s = standard_hermitian_space(e.n, e.ell).unwrap();
            let found = search_su_generators(&s, e.seed).unwrap();
            let stored = su_generators(&s).unwrap();
            assert_eq!(found, stored, "n={} ell={}", e.n, e.ell);
        }
    }

    #[test]
    fn su_orders() {
        for (n, ell) in [(2, 5), (3, 5)] {
            let s = standard_hermitian_space(n, ell).unwrap();
            let gens = su_generators(&s).unwrap();
            assert_eq!(bsgs_order(s.field(), n, &gens).unwrap(), su_order(n as u32, ell as u64));
        }
    }

    #[test]
    fn split_generators_preserve_the_pairing() {
        let s = split_hermitian_space(3, 7).unwrap();
        for m in split_su_generators(&s).unwrap() {
            assert!(s.contains(&m).unwrap());
        }
    }
}
