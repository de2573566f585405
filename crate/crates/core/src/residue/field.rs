//! A small finite-field abstraction shared by the matrix-group code.

use std::fmt::Debug;
use std::hash::Hash;

use super::prime::{add_mod, inv_mod, is_prime, mul_mod, reduce_i64, sub_mod};
use super::ResidueError;

/// A finite field given by a runtime context object.
///
/// `conj` is the distinguished involution: the identity on prime fields and
/// a + bω ↦ a + bω² on F_{ℓ²} = F_ℓ[ω].
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Copy + Eq + Ord + Hash + Debug + Send + Sync;

    fn characteristic(&self) -> u32;
    fn degree(&self) -> u32;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, v: i64) -> Self::Elem;
    fn conj(&self, a: Self::Elem) -> Self::Elem;
    /// Bijection onto `0..order()`.
    fn index(&self, a: Self::Elem) -> u64;
    fn element(&self, idx: u64) -> Self::Elem;
    /// Coordinates over the prime field.
    fn coords(&self, a: Self::Elem) -> Vec<u32>;
    fn from_coords(&self, coords: &[u32]) -> Option<Self::Elem>;

    fn order(&self) -> u64 {
        (self.characteristic() as u64).pow(self.degree())
    }

    fn neg(&self, a: Self::Elem) -> Self::Elem {
        self.sub(self.zero(), a)
    }

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn pow(&self, mut base: Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }
}

/// F_{ℓ²} = F_ℓ[ω] with ω² + ω + 1 = 0, for ℓ ≡ 2 mod 3.
///
/// Elements are pairs `[a, b]` meaning a + bω.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InertField {
    ell: u32,
}

impl InertField {
    pub fn new(ell: u32) -> Result<Self, ResidueError> {
        if !is_prime(ell as u64) {
            return Err(ResidueError::NotPrime(ell as u64));
        }
        if ell % 3 != 2 {
            return Err(ResidueError::NotInert(ell));
        }
        Ok(Self { ell })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Norm to F_ℓ: a² − ab + b².
    pub fn norm(&self, x: [u32; 2]) -> u32 {
        let l = self.ell;
        let [a, b] = x;
        sub_mod(add_mod(mul_mod(a, a, l), mul_mod(b, b, l), l), mul_mod(a, b, l), l)
    }

    pub fn omega(&self) -> [u32; 2] {
        [0, 1]
    }

    pub fn embed(&self, a: u32) -> [u32; 2] {
        [a % self.ell, 0]
    }
}

impl Field for InertField {
    type Elem = [u32; 2];

    fn characteristic(&self) -> u32 {
        self.ell
    }

    fn degree(&self) -> u32 {
        2
    }

    fn zero(&self) -> [u32; 2] {
        [0, 0]
    }

    fn one(&self) -> [u32; 2] {
        [1, 0]
    }

    #[inline]
    fn add(&self, x: [u32; 2], y: [u32; 2]) -> [u32; 2] {
        [add_mod(x[0], y[0], self.ell), add_mod(x[1], y[1], self.ell)]
    }

    #[inline]
    fn sub(&self, x: [u32; 2], y: [u32; 2]) -> [u32; 2] {
        [sub_mod(x[0], y[0], self.ell), sub_mod(x[1], y[1], self.ell)]
    }

    #[inline]
    fn mul(&self, x: [u32; 2], y: [u32; 2]) -> [u32; 2] {
        // (a + bω)(c + dω) = ac − bd + (ad + bc − bd)ω
        let l = self.ell as u64;
        let (a, b, c, d) = (x[0] as u64, x[1] as u64, y[0] as u64, y[1] as u64);
        let bd = b * d % l;
        let re = (a * c + l * l - bd) % l;
        let im = (a * d + b * c + l * l - bd) % l;
        [re as u32, im as u32]
    }

    fn inv(&self, x: [u32; 2]) -> Option<[u32; 2]> {
        let n = inv_mod(self.norm(x), self.ell)?;
        let c = self.conj(x);
        Some([mul_mod(c[0], n, self.ell), mul_mod(c[1], n, self.ell)])
    }

    fn from_int(&self, v: i64) -> [u32; 2] {
        [reduce_i64(v, self.ell), 0]
    }

    fn conj(&self, x: [u32; 2]) -> [u32; 2] {
        // ω̄ = ω² = −1 − ω
        let l = self.ell;
        [sub_mod(x[0], x[1], l), sub_mod(0, x[1], l)]
    }

    #[inline]
    fn index(&self, x: [u32; 2]) -> u64 {
        x[0] as u64 + x[1] as u64 * self.ell as u64
    }

    #[inline]
    fn element(&self, idx: u64) -> [u32; 2] {
        let l = self.ell as u64;
        [(idx % l) as u32, (idx / l) as u32]
    }

    fn coords(&self, x: [u32; 2]) -> Vec<u32> {
        x.to_vec()
    }

    fn from_coords(&self, coords: &[u32]) -> Option<[u32; 2]> {
        match coords {
            [a, b] if *a < self.ell && *b < self.ell => Some([*a, *b]),
            _ => None,
        }
    }
}
