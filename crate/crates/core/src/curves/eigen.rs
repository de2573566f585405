//! Frobenius on one Z[ω]-eigenspace of a trielliptic Jacobian.
//!
//! With χ the cubic character of [`cubic_character_sum`], the eigenvalues
//! on the χ-part have power sums −(S_k + 1), where S_k = Σ χ(f(x)) over
//! F_{p^k} and the 1 accounts for the three points at infinity.  The
//! degree-g characteristic polynomial P over Z[ω] then satisfies
//! P·P̄ = Frobenius characteristic polynomial.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::count::cubic_character_sum;
use super::model::Curve;
use super::CurveError;
use crate::residue::{EisensteinResidue, EisensteinRing};

/// a + bω in Z[ω], ω² + ω + 1 = 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: i64,
    pub b: i64,
}

impl EisensteinInt {
    pub const ZERO: Self = Self { a: 0, b: 0 };
    pub const ONE: Self = Self { a: 1, b: 0 };
    pub const OMEGA: Self = Self { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn conj(self) -> Self {
        Self::new(self.a - self.b, -self.b)
    }

    pub fn norm(self) -> i64 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    pub fn div_exact(self, k: i64) -> Option<Self> {
        (self.a % k == 0 && self.b % k == 0).then(|| Self::new(self.a / k, self.b / k))
    }

    pub fn reduce(self, ring: &EisensteinRing) -> EisensteinResidue {
        ring.from_integers(self.a, self.b)
    }
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(self.a * o.a - self.b * o.b, self.a * o.b + self.b * o.a - self.b * o.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenData {
    /// Monic degree-g characteristic polynomial on the χ-part, ascending.
    pub char_poly: Vec<EisensteinInt>,
    /// Its determinant (product of the eigenvalues).
    pub det: EisensteinInt,
}

impl EigenData {
    /// P·P̄, which has integer coefficients.
    pub fn full_char_poly(&self) -> Vec<i64> {
        let g = self.char_poly.len() - 1;
        let mut out = vec![EisensteinInt::ZERO; 2 * g + 1];
        for (i, &x) in self.char_poly.iter().enumerate() {
            for (j, &y) in self.char_poly.iter().enumerate() {
                out[i + j] = out[i + j] + x * y.conj();
            }
        }
        out.iter().map(|c| c.a).collect()
    }
}

/// Eigenspace data from the character sums over F_{p^k}, k = 1..g.
pub fn eigen_data(curve: &Curve) -> Result<EigenData, CurveError> {
    let g = curve.genus() as usize;
    let sums = (1..=g as u32)
        .map(|k| {
            let (a, b) = cubic_character_sum(curve, k)?;
            Ok(EisensteinInt::new(-a - 1, -b))
        })
        .collect::<Result<Vec<_>, CurveError>>()?;
    let mut e = vec![EisensteinInt::ONE];
    for k in 1..=g {
        let mut acc = EisensteinInt::ZERO;
        for i in 1..=k {
            let term = e[k - i] * sums[i - 1];
            acc = if i % 2 == 1 { acc + term } else { acc - term };
        }
        e.push(acc.div_exact(k as i64).ok_or(CurveError::NonIntegral)?);
    }
    // P(x) = Σ (−1)^j e_j x^{g−j}.
    let mut char_poly = vec![EisensteinInt::ZERO; g + 1];
    for (j, &ej) in e.iter().enumerate() {
        char_poly[g - j] = if j % 2 == 0 { ej } else { -ej };
    }
    Ok(EigenData { char_poly, det: e[g] })
}
