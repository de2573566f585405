//! Dense univariate polynomials over a prime field F_ℓ.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::prime::{add_mod, inv_mod, mul_mod, reduce_i64, sub_mod};
use super::ResidueError;

/// Coefficients ascending, no trailing zeros; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolyFp {
    ell: u32,
    coeffs: Vec<u32>,
}

impl PolyFp {
    pub fn new(ell: u32, coeffs: Vec<u32>) -> Self {
        let mut p = Self {
            ell,
            coeffs: coeffs.into_iter().map(|c| c % ell).collect(),
        };
        p.trim();
        p
    }

    pub fn from_ints(ell: u32, coeffs: &[i64]) -> Self {
        Self::new(ell, coeffs.iter().map(|&c| reduce_i64(c, ell)).collect())
    }

    pub fn zero(ell: u32) -> Self {
        Self { ell, coeffs: Vec::new() }
    }

    pub fn one(ell: u32) -> Self {
        Self::new(ell, vec![1])
    }

    /// x − r.
    pub fn linear(ell: u32, r: u32) -> Self {
        Self::new(ell, vec![sub_mod(0, r % ell, ell), 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| add_mod(self.coeff(i), other.coeff(i), self.ell))
            .collect();
        Self::new(self.ell, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| sub_mod(self.coeff(i), other.coeff(i), self.ell))
            .collect();
        Self::new(self.ell, c)
    }

    pub fn scale(&self, s: u32) -> Self {
        Self::new(
            self.ell,
            self.coeffs.iter().map(|&c| mul_mod(c, s, self.ell)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ell);
        }
        let mut c = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = add_mod(c[i + j], mul_mod(a, b, self.ell), self.ell);
            }
        }
        Self::new(self.ell, c)
    }

    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), ResidueError> {
        let dd = divisor.degree().ok_or(ResidueError::DivisionByZero)?;
        let lead_inv = inv_mod(divisor.leading(), self.ell).ok_or(ResidueError::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.ell), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], lead_inv, self.ell);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = sub_mod(rem[i + j], mul_mod(c, d, self.ell), self.ell);
            }
        }
        rem.truncate(dd);
        Ok((Self::new(self.ell, quot), Self::new(self.ell, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self, ResidueError> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn monic(&self) -> Self {
        match inv_mod(self.leading(), self.ell) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, (i as u64 % self.ell as u64) as u32, self.ell))
            .collect();
        Self::new(self.ell, c)
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.ell), c, self.ell))
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn roots(&self) -> Vec<u32> {
        (0..self.ell).filter(|&x| self.eval(x) == 0).collect()
    }
}

impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Irreducible factors with multiplicities, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(PolyFp, u32)>,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// Degrees of the irreducible factors with multiplicity, ascending.
    pub fn shape(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree().unwrap_or(0), *m as usize))
            .collect();
        s.sort_unstable();
        s
    }

    pub fn product(&self, ell: u32) -> PolyFp {
        let mut acc = PolyFp::new(ell, vec![self.unit]);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// Largest degree [`factor`] handles: anything left after removing factors
/// of degree ≤ 3 is then irreducible.
pub const MAX_FACTOR_DEGREE: usize = 7;

type IrredCache = Mutex<HashMap<(u32, usize), Arc<Vec<PolyFp>>>>;

/// All monic irreducible polynomials of degree 2 or 3 over F_ℓ, by exhaustion.
fn irreducibles(ell: u32, d: usize) -> Arc<Vec<PolyFp>> {
    static CACHE: OnceLock<IrredCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("cache poisoned").get(&(ell, d)) {
        return t.clone();
    }
    let count = (ell as u64).pow(d as u32);
    let mut table = Vec::new();
    for n in 0..count {
        let mut c = Vec::with_capacity(d + 1);
        let mut rest = n;
        for _ in 0..d {
            c.push((rest % ell as u64) as u32);
            rest /= ell as u64;
        }
        c.push(1);
        let f = PolyFp::new(ell, c);
        // For degree ≤ 3 reducible means having a root.
        if f.roots().is_empty() {
            table.push(f);
        }
    }
    let table = Arc::new(table);
    cache
        .lock()
        .expect("cache poisoned")
        .insert((ell, d), table.clone());
    table
}

/// Complete factorization over F_ℓ for degree ≤ [`MAX_FACTOR_DEGREE`].
pub fn factor(f: &PolyFp) -> Result<Factorization, ResidueError> {
    let deg = f.degree().ok_or(ResidueError::DivisionByZero)?;
    if deg > MAX_FACTOR_DEGREE {
        return Err(ResidueError::DegreeTooLarge(deg));
    }
    let ell = f.ell();
    let unit = f.leading();
    let mut rest = f.monic();
    let mut factors: Vec<(PolyFp, u32)> = Vec::new();

    let mut strip = |rest: &mut PolyFp, g: &PolyFp| {
        let mut m = 0;
        loop {
            let (q, r) = rest.divrem(g).expect("monic divisor");
            if !r.is_zero() {
                break;
            }
            *rest = q;
            m += 1;
        }
        if m > 0 {
            factors.push((g.clone(), m));
        }
    };

    for r in rest.roots() {
        strip(&mut rest, &PolyFp::linear(ell, r));
    }
    for d in 2..=3 {
        if rest.degree().unwrap_or(0) < 2 * d {
            break;
        }
        for g in irreducibles(ell, d).iter() {
            if rest.degree().unwrap_or(0) < d {
                break;
            }
            strip(&mut rest, g);
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        factors.push((rest, 1));
    }
    factors.sort();
    Ok(Factorization { unit, factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x2_plus_1_mod_3_is_irreducible() {
        let f = PolyFp::new(3, vec![1, 0, 1]);
        assert!(factor(&f).unwrap().is_irreducible());
    }

    #[test]
    fn square_of_linear_is_reducible() {
        let f = PolyFp::linear(5, 1).mul(&PolyFp::linear(5, 1));
        let fac = factor(&f).unwrap();
        assert!(!fac.is_irreducible());
        assert_eq!(fac.factors, vec![(PolyFp::linear(5, 1), 2)]);
    }

    #[test]
    fn product_of_two_cubics() {
        let ell = 5;
        let cubics = irreducibles(ell, 3);
        let f = cubics[0].mul(&cubics[7]);
        let fac = factor(&f).unwrap();
        assert_eq!(fac.shape(), vec![3, 3]);
        assert_eq!(fac.product(ell), f);
    }

    #[test]
    fn irreducible_counts() {
        // Number of monic irreducibles of degree d: (1/d)Σ_{e|d} μ(e) q^{d/e}.
        for q in [2u32, 3, 5, 7] {
            assert_eq!(irreducibles(q, 2).len() as u32, (q * q - q) / 2);
            assert_eq!(irreducibles(q, 3).len() as u32, (q * q * q - q) / 3);
        }
    }

    #[test]
    fn divrem_reconstructs() {
        let a = PolyFp::new(7, vec![3, 1, 4, 1, 5]);
        let b = PolyFp::new(7, vec![2, 6, 3]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn squarefree_detection() {
        let f = PolyFp::linear(7, 2).mul(&PolyFp::linear(7, 3));
        assert!(f.is_squarefree());
        assert!(!f.mul(&PolyFp::linear(7, 2)).is_squarefree());
    }
}
