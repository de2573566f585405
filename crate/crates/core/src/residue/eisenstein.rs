//! Z[ω]/ℓ for ω a primitive cube root of unity.
//!
//! When ℓ is inert this is F_{ℓ²}; when ℓ splits it is the product of two
//! copies of Z/ℓ indexed by the primes λ = (ℓ, ω − ζ) and λ̄ = (ℓ, ω − ζ²),
//! where ζ is the smallest cube root of unity mod ℓ.  For ℓ = 3 the ring is
//! F_3[ω] with ω² + ω + 1 = (ω − 1)², kept in the a + bω coordinates.

use serde::{Deserialize, Serialize};

use super::prime::{
    add_mod, classify_prime, cube_root_of_unity, inv_mod, mul_mod, reduce_i64, sub_mod,
    PrimeModulus, Splitting,
};
use super::ResidueError;

/// An element of Z[ω]/ℓ.
///
/// For split ℓ the coordinates are the images (u, v) at (λ, λ̄); otherwise
/// they are (a, b) with the element equal to a + bω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisensteinResidue {
    ell: u32,
    shape: Splitting,
    c: [u32; 2],
}

/// Context for building elements of Z[ω]/ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EisensteinRing {
    modulus: PrimeModulus,
    zeta: Option<u32>,
}

impl EisensteinRing {
    pub fn new(ell: u32) -> Result<Self, ResidueError> {
        let modulus = classify_prime(ell)?;
        let zeta = match modulus.splitting() {
            Splitting::Split => cube_root_of_unity(ell),
            _ => None,
        };
        Ok(Self { modulus, zeta })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn ell(&self) -> u32 {
        self.modulus.ell()
    }

    pub fn splitting(&self) -> Splitting {
        self.modulus.splitting()
    }

    /// The cube root of unity that ω maps to at λ, for split ℓ.
    pub fn zeta(&self) -> Option<u32> {
        self.zeta
    }

    fn raw(&self, c: [u32; 2]) -> EisensteinResidue {
        EisensteinResidue { ell: self.ell(), shape: self.splitting(), c }
    }

    /// The image of a + bω.
    pub fn from_integers(&self, a: i64, b: i64) -> EisensteinResidue {
        let l = self.ell();
        let (a, b) = (reduce_i64(a, l), reduce_i64(b, l));
        match self.zeta {
            Some(z) => {
                let z2 = mul_mod(z, z, l);
                self.raw([add_mod(a, mul_mod(b, z, l), l), add_mod(a, mul_mod(b, z2, l), l)])
            }
            None => self.raw([a, b]),
        }
    }

    /// Builds a split element from its (λ, λ̄) coordinates.
    pub fn from_split(&self, u: u32, v: u32) -> Result<EisensteinResidue, ResidueError> {
        if self.zeta.is_none() {
            return Err(ResidueError::NotSplit(self.ell()));
        }
        let l = self.ell();
        Ok(self.raw([u % l, v % l]))
    }

    pub fn zero(&self) -> EisensteinResidue {
        self.from_integers(0, 0)
    }

    pub fn one(&self) -> EisensteinResidue {
        self.from_integers(1, 0)
    }

    pub fn omega(&self) -> EisensteinResidue {
        self.from_integers(0, 1)
    }
}

impl EisensteinResidue {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn shape(&self) -> Splitting {
        self.shape
    }

    /// Raw coordinates: (u, v) for split ℓ, (a, b) for a + bω otherwise.
    pub fn coords(&self) -> [u32; 2] {
        self.c
    }

    fn check(&self, other: &Self) -> Result<(), ResidueError> {
        if self.ell != other.ell {
            return Err(ResidueError::MixedModuli(self.ell, other.ell));
        }
        Ok(())
    }

    fn with(&self, c: [u32; 2]) -> Self {
        Self { c, ..*self }
    }

    pub fn add(&self, other: &Self) -> Result<Self, ResidueError> {
        self.check(other)?;
        let l = self.ell;
        Ok(self.with([add_mod(self.c[0], other.c[0], l), add_mod(self.c[1], other.c[1], l)]))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ResidueError> {
        self.check(other)?;
        let l = self.ell;
        Ok(self.with([sub_mod(self.c[0], other.c[0], l), sub_mod(self.c[1], other.c[1], l)]))
    }

    pub fn neg(&self) -> Self {
        let l = self.ell;
        self.with([sub_mod(0, self.c[0], l), sub_mod(0, self.c[1], l)])
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ResidueError> {
        self.check(other)?;
        let l = self.ell;
        let (x, y) = (self.c, other.c);
        let c = match self.shape {
            Splitting::Split => [mul_mod(x[0], y[0], l), mul_mod(x[1], y[1], l)],
            _ => {
                let bd = mul_mod(x[1], y[1], l);
                [
                    sub_mod(mul_mod(x[0], y[0], l), bd, l),
                    sub_mod(add_mod(mul_mod(x[0], y[1], l), mul_mod(x[1], y[0], l), l), bd, l),
                ]
            }
        };
        Ok(self.with(c))
    }

    pub fn conj(&self) -> Self {
        let l = self.ell;
        match self.shape {
            Splitting::Split => self.with([self.c[1], self.c[0]]),
            _ => self.with([sub_mod(self.c[0], self.c[1], l), sub_mod(0, self.c[1], l)]),
        }
    }

    /// x·conj(x), as an element of Z/ℓ.
    pub fn norm(&self) -> u32 {
        let l = self.ell;
        match self.shape {
            Splitting::Split => mul_mod(self.c[0], self.c[1], l),
            _ => {
                let [a, b] = self.c;
                sub_mod(add_mod(mul_mod(a, a, l), mul_mod(b, b, l), l), mul_mod(a, b, l), l)
            }
        }
    }

    pub fn inv(&self) -> Result<Self, ResidueError> {
        let n = inv_mod(self.norm(), self.ell).ok_or(ResidueError::ZeroDivisor)?;
        let c = self.conj();
        let l = self.ell;
        Ok(self.with([mul_mod(c.c[0], n, l), mul_mod(c.c[1], n, l)]))
    }

    pub fn is_zero(&self) -> bool {
        self.c == [0, 0]
    }
}
