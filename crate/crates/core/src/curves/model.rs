//! Affine models and seeded sampling.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::covers::{signature_of, InertiaType, TriSignature};
use crate::residue::{is_prime, PolyFp};

/// y² = ∏(x − c_i) with 2g + 2 distinct finite branch points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperCurve {
    p: u32,
    branch: Vec<u32>,
}

impl HyperCurve {
    pub fn new(p: u32, mut branch: Vec<u32>) -> Result<Self, CurveError> {
        check_prime(p)?;
        if p == 2 {
            return Err(CurveError::EvenCharacteristic);
        }
        if branch.len() < 4 || !branch.len().is_multiple_of(2) {
            return Err(CurveError::BranchCount(branch.len()));
        }
        branch.sort_unstable();
        check_distinct(p, &branch)?;
        Ok(Self { p, branch })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn branch(&self) -> &[u32] {
        &self.branch
    }

    pub fn genus(&self) -> u32 {
        (self.branch.len() as u32 - 2) / 2
    }
}

/// y³ = ∏(x − a_i)·∏(x − b_j)².
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriCurve {
    p: u32,
    a_points: Vec<u32>,
    b_points: Vec<u32>,
}

impl TriCurve {
    pub fn new(p: u32, mut a_points: Vec<u32>, mut b_points: Vec<u32>) -> Result<Self, CurveError> {
        check_prime(p)?;
        if p % 3 != 1 {
            return Err(CurveError::NotOneModThree(p));
        }
        InertiaType::trielliptic(a_points.len(), b_points.len())?;
        a_points.sort_unstable();
        b_points.sort_unstable();
        let all: Vec<u32> = a_points.iter().chain(&b_points).copied().collect();
        check_distinct(p, &all)?;
        Ok(Self { p, a_points, b_points })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn a_points(&self) -> &[u32] {
        &self.a_points
    }

    pub fn b_points(&self) -> &[u32] {
        &self.b_points
    }

    pub fn inertia(&self) -> InertiaType {
        InertiaType::trielliptic(self.a_points.len(), self.b_points.len()).expect("checked on construction")
    }

    pub fn signature(&self) -> TriSignature {
        signature_of(&self.inertia()).expect("checked on construction")
    }

    /// g = r − 2 with r = d₁ + d₂ branch points.
    pub fn genus(&self) -> u32 {
        (self.a_points.len() + self.b_points.len()) as u32 - 2
    }
}

fn check_prime(p: u32) -> Result<(), CurveError> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(CurveError::NotPrime(p))
    }
}

fn check_distinct(p: u32, points: &[u32]) -> Result<(), CurveError> {
    let mut seen = points.to_vec();
    seen.sort_unstable();
    if seen.iter().any(|&c| c >= p) || seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(CurveError::RepeatedBranchPoint);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Curve {
    Hyper(HyperCurve),
    Tri(TriCurve),
}

impl Curve {
    pub fn p(&self) -> u32 {
        match self {
            Curve::Hyper(c) => c.p(),
            Curve::Tri(c) => c.p(),
        }
    }

    pub fn genus(&self) -> u32 {
        match self {
            Curve::Hyper(c) => c.genus(),
            Curve::Tri(c) => c.genus(),
        }
    }

    /// Degree d of the cyclic cover y^d = f(x).
    pub fn cover_degree(&self) -> u32 {
        match self {
            Curve::Hyper(_) => 2,
            Curve::Tri(_) => 3,
        }
    }

    /// Linear factors of f as (root, multiplicity).
    pub fn factors(&self) -> Vec<(u32, u32)> {
        match self {
            Curve::Hyper(c) => c.branch.iter().map(|&r| (r, 1)).collect(),
            Curve::Tri(c) => c.a_points.iter().map(|&r| (r, 1)).chain(c.b_points.iter().map(|&r| (r, 2))).collect(),
        }
    }

    /// The right-hand side f(x), monic, over F_p.
    pub fn rhs(&self) -> PolyFp {
        let p = self.p();
        self.factors().iter().fold(PolyFp::one(p), |acc, &(r, m)| {
            (0..m).fold(acc, |acc, _| acc.mul(&PolyFp::linear(p, r)))
        })
    }
}

/// A curve family: which sampler to call.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Hyper { g: u32 },
    Tri { d1: usize, d2: usize },
}

impl Family {
    pub fn genus(&self) -> u32 {
        match *self {
            Family::Hyper { g } => g,
            Family::Tri { d1, d2 } => (d1 + d2) as u32 - 2,
        }
    }

    pub fn validate(&self, p: u32) -> Result<(), CurveError> {
        self.sample(p, 0).map(|_| ())
    }

    pub fn sample(&self, p: u32, seed: u64) -> Result<Curve, CurveError> {
        match *self {
            Family::Hyper { g } => sample_hyper(g, p, seed).map(Curve::Hyper),
            Family::Tri { d1, d2 } => sample_tri(&InertiaType::trielliptic(d1, d2)?, p, seed).map(Curve::Tri),
        }
    }
}

fn distinct_points(p: u32, n: usize, seed: u64) -> Result<Vec<u32>, CurveError> {
    if n > p as usize {
        return Err(CurveError::PrimeTooSmall { p, needed: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample(&mut rng, p as usize, n).into_iter().map(|i| i as u32).collect())
}

/// 2g + 2 distinct branch points drawn uniformly from F_p.
pub fn sample_hyper(g: u32, p: u32, seed: u64) -> Result<HyperCurve, CurveError> {
    if g == 0 {
        return Err(CurveError::BranchCount(2));
    }
    check_prime(p)?;
    if p == 2 {
        return Err(CurveError::EvenCharacteristic);
    }
    HyperCurve::new(p, distinct_points(p, 2 * g as usize + 2, seed)?)
}

/// d₁ + d₂ distinct points of F_p; the first d₁ drawn become the a-points.
pub fn sample_tri(t: &InertiaType, p: u32, seed: u64) -> Result<TriCurve, CurveError> {
    let (d1, d2) = t.tri_counts().ok_or(CurveError::NotTrielliptic)?;
    check_prime(p)?;
    if p % 3 != 1 {
        return Err(CurveError::NotOneModThree(p));
    }
    let pts = distinct_points(p, d1 + d2, seed)?;
    TriCurve::new(p, pts[..d1].to_vec(), pts[d1..].to_vec())
}
