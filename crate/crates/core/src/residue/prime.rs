//! Prime moduli and the prime field Z/ℓ.

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::ResidueError;

/// Trial division; moduli here never exceed a few thousand.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// How a rational prime decomposes in Z[ζ₃].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimeModulus {
    ell: u32,
    splitting: Splitting,
}

impl PrimeModulus {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn splitting(&self) -> Splitting {
        self.splitting
    }
}

/// Tags `ell` with its splitting type in Z[ζ₃].
pub fn classify_prime(ell: u32) -> Result<PrimeModulus, ResidueError> {
    if !is_prime(ell as u64) {
        return Err(ResidueError::NotPrime(ell as u64));
    }
    let splitting = match ell % 3 {
        0 => Splitting::Ramified,
        1 => Splitting::Split,
        _ => {
            // 2 ≡ 2 mod 3 is inert as well: x² + x + 1 is irreducible over F_2.
            Splitting::Inert
        }
    };
    Ok(PrimeModulus { ell, splitting })
}

#[inline]
pub fn mul_mod(a: u32, b: u32, m: u32) -> u32 {
    ((a as u64 * b as u64) % m as u64) as u32
}

#[inline]
pub fn add_mod(a: u32, b: u32, m: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= m as u64 { s - m as u64 } else { s }) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, m: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + m as u64 - b as u64) as u32
    }
}

pub fn pow_mod(mut base: u32, mut exp: u64, m: u32) -> u32 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime via Fermat; `None` for zero.
pub fn inv_mod(a: u32, p: u32) -> Option<u32> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, p as u64 - 2, p))
    }
}

/// Canonical representative of `v` in `[0, m)`.
#[inline]
pub fn reduce_i64(v: i64, m: u32) -> u32 {
    v.rem_euclid(m as i64) as u32
}

/// The smallest root of x² + x + 1 modulo a split prime: a primitive cube root of unity.
pub fn cube_root_of_unity(ell: u32) -> Option<u32> {
    (2..ell).find(|&z| (z as u64 * z as u64 + z as u64 + 1).is_multiple_of(ell as u64))
}

/// The prime field Z/p with elements stored as canonical `u32` residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, ResidueError> {
        if !is_prime(p as u64) {
            return Err(ResidueError::NotPrime(p as u64));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn characteristic(&self) -> u32 {
        self.p
    }

    fn degree(&self) -> u32 {
        1
    }

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        add_mod(a, b, self.p)
    }

    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        sub_mod(a, b, self.p)
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        mul_mod(a, b, self.p)
    }

    fn inv(&self, a: u32) -> Option<u32> {
        inv_mod(a, self.p)
    }

    fn from_int(&self, v: i64) -> u32 {
        reduce_i64(v, self.p)
    }

    fn conj(&self, a: u32) -> u32 {
        a
    }

    #[inline]
    fn index(&self, a: u32) -> u64 {
        a as u64
    }

    #[inline]
    fn element(&self, idx: u64) -> u32 {
        idx as u32
    }

    fn coords(&self, a: u32) -> Vec<u32> {
        vec![a]
    }

    fn from_coords(&self, coords: &[u32]) -> Option<u32> {
        match coords {
            [a] if *a < self.p => Some(*a),
            _ => None,
        }
    }
}
