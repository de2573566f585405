//! L-polynomials from point counts, and their reductions mod ℓ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CurveError;
use crate::groups::dual_reciprocal;
use crate::residue::{classify_prime, factor, Factorization, PolyFp, PrimeField, Splitting};

/// Roots of every produced L-polynomial must have |α| within this of √p.
pub const WEIL_TOLERANCE: f64 = 1e-6;

/// L(x) = 1 + a₁x + … + a_{2g}x^{2g} = ∏(1 − α_i x).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LPolynomial {
    pub p: u32,
    pub genus: u32,
    pub coeffs: Vec<i64>,
}

impl LPolynomial {
    pub fn value_at_one(&self) -> i128 {
        self.coeffs.iter().map(|&c| c as i128).sum()
    }

    /// a_{2g−i} = p^{g−i}·a_i.
    pub fn satisfies_functional_equation(&self) -> bool {
        let g = self.genus as usize;
        (0..=g).all(|i| self.coeffs[2 * g - i] as i128 == (self.p as i128).pow((g - i) as u32) * self.coeffs[i] as i128)
    }

    /// Characteristic polynomial of Frobenius x^{2g}L(1/x), ascending.
    pub fn frobenius_char_poly(&self) -> Vec<i64> {
        self.coeffs.iter().rev().copied().collect()
    }

    /// The Frobenius characteristic polynomial over Z/ℓ.
    pub fn reduce(&self, ell: u32) -> Result<PolyFp, CurveError> {
        if self.p.is_multiple_of(ell) {
            return Err(CurveError::EllDividesP { ell, p: self.p });
        }
        Ok(PolyFp::from_ints(ell, &self.frobenius_char_poly()))
    }

    /// Histogram key: ascending coefficients of the reduction, leading 1 included.
    pub fn key(&self, ell: u32) -> Result<Vec<u32>, CurveError> {
        let f = self.reduce(ell)?;
        let mut c = f.into_coeffs();
        c.resize(2 * self.genus as usize + 1, 0);
        Ok(c)
    }

    /// Largest | |α| − √p | over the Frobenius eigenvalues.
    pub fn weil_deviation(&self) -> Result<f64, CurveError> {
        let sq = squarefree_part(&self.frobenius_char_poly())?;
        let roots = aberth_roots(&sq, (self.p as f64).sqrt());
        let target = (self.p as f64).sqrt();
        Ok(roots.iter().map(|z| (z.norm() - target).abs()).fold(0.0, f64::max))
    }
}

/// Recovers L from N_1..N_g: power sums s_k = p^k + 1 − N_k give a₁..a_g
/// by Newton's identities, and the functional equation gives the rest.
pub fn lpoly_from_counts(counts: &[u64], genus: u32, p: u32) -> Result<LPolynomial, CurveError> {
    let g = genus as usize;
    if counts.len() != g || g == 0 {
        return Err(CurveError::CountMismatch { counts: counts.len(), genus });
    }
    let sums: Vec<i128> = counts
        .iter()
        .enumerate()
        .map(|(i, &n)| (p as i128).pow(i as u32 + 1) + 1 - n as i128)
        .collect();
    // e_k: elementary symmetric functions of the α; a_k = (−1)^k e_k.
    let mut e = vec![1i128];
    for k in 1..=g {
        let mut acc = 0i128;
        for i in 1..=k {
            let term = e[k - i] * sums[i - 1];
            acc += if i % 2 == 1 { term } else { -term };
        }
        if acc % k as i128 != 0 {
            return Err(CurveError::NonIntegral);
        }
        e.push(acc / k as i128);
    }
    let mut coeffs = vec![0i64; 2 * g + 1];
    for (k, &ek) in e.iter().enumerate() {
        let a = if k % 2 == 0 { ek } else { -ek };
        coeffs[k] = i64::try_from(a).map_err(|_| CurveError::Overflow)?;
    }
    for i in 0..g {
        let v = (p as i128).pow((g - i) as u32) * coeffs[i] as i128;
        coeffs[2 * g - i] = i64::try_from(v).map_err(|_| CurveError::Overflow)?;
    }
    let l = LPolynomial { p, genus, coeffs };
    if l.value_at_one() <= 0 {
        return Err(CurveError::LNotPositive);
    }
    let dev = l.weil_deviation()?;
    if dev >= WEIL_TOLERANCE {
        return Err(CurveError::NotWeil { deviation: dev });
    }
    Ok(l)
}

fn trim(mut f: Vec<i128>) -> Vec<i128> {
    while f.len() > 1 && f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn primitive(f: Vec<i128>) -> Vec<i128> {
    let c = f.iter().fold(0, |acc, &x| gcd_i128(acc, x));
    let sign = if f.last().copied().unwrap_or(0) < 0 { -1 } else { 1 };
    if c == 0 {
        return f;
    }
    f.into_iter().map(|x| sign * x / c).collect()
}

/// Pseudo-remainder lc(b)^k·a mod b over Z.
fn pseudo_rem(a: &[i128], b: &[i128]) -> Result<Vec<i128>, CurveError> {
    let mut r = a.to_vec();
    let lb = *b.last().expect("nonzero divisor");
    while r.len() >= b.len() && r.iter().any(|&x| x != 0) {
        let lr = *r.last().expect("nonempty");
        let shift = r.len() - b.len();
        for x in r.iter_mut() {
            *x = x.checked_mul(lb).ok_or(CurveError::Overflow)?;
        }
        for (i, &c) in b.iter().enumerate() {
            let t = lr.checked_mul(c).ok_or(CurveError::Overflow)?;
            r[shift + i] -= t;
        }
        r.pop();
        r = primitive(trim(r));
    }
    Ok(trim(r))
}

/// f / gcd(f, f′) over Q, scaled to a primitive integer polynomial.
fn squarefree_part(f: &[i64]) -> Result<Vec<i128>, CurveError> {
    let f: Vec<i128> = f.iter().map(|&c| c as i128).collect();
    let df: Vec<i128> = f.iter().enumerate().skip(1).map(|(i, &c)| i as i128 * c).collect();
    let (mut a, mut b) = (primitive(f.clone()), primitive(trim(df)));
    while b.len() > 1 || b[0] != 0 {
        let r = pseudo_rem(&a, &b)?;
        a = b;
        b = if r.iter().all(|&x| x == 0) { vec![0] } else { primitive(r) };
    }
    if a.len() == 1 {
        return Ok(f);
    }
    // a is primitive and divides f over Q, so by Gauss's lemma the
    // quotient is integral.
    let la = *a.last().expect("nonempty");
    let mut rem = f;
    let mut quot = vec![0i128; rem.len() - a.len() + 1];
    while rem.len() >= a.len() {
        let lr = *rem.last().expect("nonempty");
        if lr % la != 0 {
            return Err(CurveError::NonIntegral);
        }
        let shift = rem.len() - a.len();
        quot[shift] = lr / la;
        for (i, &ai) in a.iter().enumerate() {
            rem[shift + i] -= quot[shift] * ai;
        }
        rem.pop();
    }
    Ok(primitive(trim(quot)))
}

/// All complex roots by Aberth–Ehrlich iteration, starting on |z| = radius.
fn aberth_roots(f: &[i128], radius: f64) -> Vec<Complex64> {
    let n = f.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = f[n] as f64;
    let c: Vec<Complex64> = f.iter().map(|&x| Complex64::new(x as f64 / lead, 0.0)).collect();
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dv = dv * z + v;
            v = v * z + a;
        }
        (v, dv)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut largest = 0.0f64;
        for i in 0..n {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[i] -= step;
            largest = largest.max(step.norm() / radius.max(1.0));
        }
        if largest < 1e-15 {
            break;
        }
    }
    z
}

/// Factorization of the reduction mod ℓ, and whether it is irreducible.
pub fn reduce_and_factor(l: &LPolynomial, ell: u32) -> Result<(Factorization, bool), CurveError> {
    let f = factor(&l.reduce(ell)?)?;
    let irreducible = f.is_irreducible();
    Ok((f, irreducible))
}

/// Whether an ascending monic key is irreducible over Z/ℓ.
pub fn key_is_irreducible(key: &[u32], ell: u32) -> Result<bool, CurveError> {
    Ok(factor(&PolyFp::new(ell, key.to_vec()))?.is_irreducible())
}

/// h^♯ = h(0)⁻¹·Σ c_i p^i x^{g−i}: roots p/β for the roots β of h.
pub fn sharp(h: &PolyFp, p: u32) -> Option<PolyFp> {
    let f = PrimeField::new(h.ell()).ok()?;
    let m = p % h.ell();
    dual_reciprocal(&f, h.coeffs(), m).map(|c| PolyFp::new(h.ell(), c))
}

/// For split ℓ, finds monic h of degree g with `lbar` = h·h^♯.
///
/// Every monic degree-g h with h(0) ≠ 0 dividing `lbar` is tried, in
/// increasing coefficient order.
pub fn split_unitary_predicate(lbar: &PolyFp, p: u32, g: u32) -> Result<Option<PolyFp>, CurveError> {
    let ell = lbar.ell();
    if classify_prime(ell)?.splitting() != Splitting::Split {
        return Err(CurveError::WrongSplitting(ell));
    }
    if p.is_multiple_of(ell) {
        return Err(CurveError::EllDividesP { ell, p });
    }
    let g = g as usize;
    if lbar.degree() != Some(2 * g) || !lbar.is_monic() {
        return Ok(None);
    }
    let count = (ell as u64).pow(g as u32);
    for n in 0..count {
        let mut c = Vec::with_capacity(g + 1);
        let mut rest = n;
        for _ in 0..g {
            c.push((rest % ell as u64) as u32);
            rest /= ell as u64;
        }
        c.push(1);
        if c[0] == 0 {
            continue;
        }
        let h = PolyFp::new(ell, c);
        if !lbar.rem(&h)?.is_zero() {
            continue;
        }
        if let Some(hs) = sharp(&h, p) {
            if h.mul(&hs) == *lbar {
                return Ok(Some(h));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts_from_roots(roots: &[Complex64], q: u32, n: u32) -> Vec<u64> {
        (1..=n)
            .map(|k| {
                let s: Complex64 = roots.iter().map(|a| a.powu(k)).sum();
                ((q as f64).powi(k as i32) + 1.0 - s.re).round() as u64
            })
            .collect()
    }

    #[test]
    fn elliptic_closed_form() {
        let l = lpoly_from_counts(&[8], 1, 7).unwrap();
        assert_eq!(l.coeffs, vec![1, 0, 7]);
        let l = lpoly_from_counts(&[10], 1, 7).unwrap();
        assert_eq!(l.coeffs, vec![1, 2, 7]);
        assert_eq!(l.value_at_one(), 10);
    }

    #[test]
    fn synthetic_round_trip() {
        // α = 1 + 2i, 1 − 2i (|α|² = 5) and α = ±i√5.
        let s5 = 5f64.sqrt();
        let roots = [
            Complex64::new(1.0, 2.0),
            Complex64::new(1.0, -2.0),
            Complex64::new(0.0, s5),
            Complex64::new(0.0, -s5),
        ];
        let counts = counts_from_roots(&roots, 5, 2);
        let l = lpoly_from_counts(&counts, 2, 5).unwrap();
        // (1 − 2x + 5x²)(1 + 5x²)
        assert_eq!(l.coeffs, vec![1, -2, 10, -10, 25]);
        assert!(l.satisfies_functional_equation());
    }

    #[test]
    fn repeated_roots_pass_the_weil_check() {
        // (1 + 5x²)² has double roots ±i√5.
        let l = LPolynomial { p: 5, genus: 2, coeffs: vec![1, 0, 10, 0, 25] };
        assert!(l.weil_deviation().unwrap() < WEIL_TOLERANCE);
    }

    #[test]
    fn rejects_impossible_counts() {
        assert!(matches!(lpoly_from_counts(&[30], 1, 7), Err(CurveError::NotWeil { .. })));
        assert!(matches!(lpoly_from_counts(&[8, 50], 1, 7), Err(CurveError::CountMismatch { .. })));
    }

    #[test]
    fn factor_examples() {
        let l = LPolynomial { p: 2, genus: 1, coeffs: vec![1, 0, 1] };
        // x² + 1 mod 3.
        assert!(reduce_and_factor(&l, 3).unwrap().1);
        // Reduces to (x − 1)² mod 5.
        let l = LPolynomial { p: 11, genus: 1, coeffs: vec![1, -2, 11] };
        let (f, irr) = reduce_and_factor(&l, 5).unwrap();
        assert!(!irr);
        assert_eq!(f.shape(), vec![1, 1]);
        assert_eq!(f.product(5), l.reduce(5).unwrap());
        assert!(matches!(reduce_and_factor(&l, 11), Err(CurveError::EllDividesP { .. })));
    }

    #[test]
    fn sharp_of_linear() {
        let h = PolyFp::from_ints(13, &[-1, 1]);
        assert_eq!(sharp(&h, 7).unwrap(), PolyFp::from_ints(13, &[-7, 1]));
        let lbar = PolyFp::from_ints(13, &[-1, 1]).mul(&PolyFp::from_ints(13, &[-7, 1]));
        assert!(split_unitary_predicate(&lbar, 7, 1).unwrap().is_some());
        assert!(matches!(split_unitary_predicate(&PolyFp::from_ints(5, &[1, 0, 1]), 7, 1), Err(CurveError::WrongSplitting(5))));
    }
}
