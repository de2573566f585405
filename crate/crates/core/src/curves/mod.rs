//! Hyperelliptic and trielliptic curves over F_p: sampling, point counts,
//! L-polynomials and their reductions mod ℓ.

pub mod count;
pub mod eigen;
pub mod lpoly;
pub mod model;

pub use count::{brute_force_count, count_points, count_points_up_to, cubic_character_sum};
pub use eigen::{eigen_data, EigenData, EisensteinInt};
pub use lpoly::{
    key_is_irreducible, lpoly_from_counts, reduce_and_factor, sharp, split_unitary_predicate, LPolynomial,
    WEIL_TOLERANCE,
};
pub use model::{sample_hyper, sample_tri, Curve, Family, HyperCurve, TriCurve};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::covers::CoverError;
use crate::residue::ResidueError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("p = {0} is not 1 mod 3")]
    NotOneModThree(u32),
    #[error("F_{p} has too few points for {needed} distinct branch points")]
    PrimeTooSmall { p: u32, needed: usize },
    #[error("a hyperelliptic model needs an even number ≥ 4 of branch points, got {0}")]
    BranchCount(usize),
    #[error("branch points must be distinct elements of F_p")]
    RepeatedBranchPoint,
    #[error("expected a trielliptic inertia type")]
    NotTrielliptic,
    #[error(transparent)]
    Inertia(#[from] CoverError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error("extension degree {0} is out of range")]
    ExtensionOutOfRange(u32),
    #[error("got {counts} point counts for genus {genus}")]
    CountMismatch { counts: usize, genus: u32 },
    #[error("counts do not come from a Weil polynomial (Newton identities are not integral)")]
    NonIntegral,
    #[error("counts do not come from a Weil polynomial (root deviation {deviation:e})")]
    NotWeil { deviation: f64 },
    #[error("L(1) is not positive")]
    LNotPositive,
    #[error("coefficient overflow")]
    Overflow,
    #[error("ℓ = {ell} divides p = {p}")]
    EllDividesP { ell: u32, p: u32 },
    #[error("ℓ = {0} does not split in Z[ω]")]
    WrongSplitting(u32),
}

/// One sampled curve with its counts and reductions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRecord {
    pub index: u64,
    pub seed: u64,
    pub curve: Curve,
    pub counts: Vec<u64>,
    pub lpoly: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub key: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor_shape: Option<Vec<usize>>,
}

/// Samples curve `seed` of the family and computes its L-polynomial, and
/// with `ell` its reduction and factorization shape.
pub fn analyze(family: &Family, p: u32, seed: u64, index: u64, ell: Option<u32>) -> Result<CurveRecord, CurveError> {
    let curve = family.sample(p, seed)?;
    let g = curve.genus();
    let counts = count_points_up_to(&curve, g)?;
    let l = lpoly_from_counts(&counts, g, p)?;
    let (key, factor_shape) = match ell {
        Some(ell) => {
            let (f, _) = reduce_and_factor(&l, ell)?;
            (Some(l.key(ell)?), Some(f.shape()))
        }
        None => (None, None),
    };
    Ok(CurveRecord { index, seed, curve, counts, lpoly: l.coeffs, ell, key, factor_shape })
}

/// [`analyze`] for seeds seed..seed+n−1 on the current rayon pool, in
/// index order.
pub fn analyze_batch(family: &Family, p: u32, n: u64, seed: u64, ell: Option<u32>) -> Result<Vec<CurveRecord>, CurveError> {
    (0..n).into_par_iter().map(|i| analyze(family, p, seed + i, i, ell)).collect()
}
