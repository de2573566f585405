//! Small extension fields F_{p^k}, k ≤ 3, for point counting.
//!
//! Elements are encoded as integers c₀ + c₁p + c₂p² where c₀ + c₁x + c₂x²
//! is the residue modulo the defining polynomial.  Multiplication goes
//! through discrete-log tables built once per (p, k) and shared.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::prime::{add_mod, cube_root_of_unity, is_prime, mul_mod, sub_mod};
use super::ResidueError;

/// Largest field we are willing to tabulate.
pub const MAX_EXT_ORDER: u64 = 1 << 24;

/// An element of an [`ExtField`], by its base-p coefficient encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(pub u32);

#[derive(Debug)]
struct Tables {
    /// `log[i]` for nonzero i; `log[0]` is unused.
    log: Vec<u32>,
    /// `exp[e] = g^e` for 0 ≤ e < q − 1.
    exp: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct ExtField {
    p: u32,
    k: u32,
    q: u32,
    /// c₀..c_{k−1} of the monic modulus x^k + c_{k−1}x^{k−1} + … + c₀.
    modulus: Vec<u32>,
    tables: Arc<Tables>,
}

type Cache = Mutex<HashMap<(u32, u32), ExtField>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// F_{p^k} with the lexicographically least monic rootless modulus.
pub fn build_ext_field(p: u32, k: u32) -> Result<ExtField, ResidueError> {
    if !is_prime(p as u64) {
        return Err(ResidueError::NotPrime(p as u64));
    }
    if !(1..=3).contains(&k) {
        return Err(ResidueError::UnsupportedDegree(k));
    }
    let q = (p as u64).pow(k);
    if q > MAX_EXT_ORDER {
        return Err(ResidueError::FieldTooLarge(q));
    }
    if let Some(f) = cache().lock().expect("field cache poisoned").get(&(p, k)) {
        return Ok(f.clone());
    }
    let modulus = least_rootless_modulus(p, k);
    let tables = Arc::new(build_tables(p, k, &modulus));
    let field = ExtField { p, k, q: q as u32, modulus, tables };
    cache()
        .lock()
        .expect("field cache poisoned")
        .insert((p, k), field.clone());
    Ok(field)
}

fn least_rootless_modulus(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0];
    }
    let q = (p as u64).pow(k);
    // Lexicographic order on (c_{k−1}, …, c₀) is numeric order of the
    // encoding with c_{k−1} as the most significant digit.
    for n in 0..q {
        let mut coeffs = vec![0u32; k as usize];
        let mut rest = n;
        for i in 0..k as usize {
            coeffs[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        let has_root = (0..p).any(|x| {
            let mut acc = 1u32;
            for i in (0..k as usize).rev() {
                acc = add_mod(mul_mod(acc, x, p), coeffs[i], p);
            }
            acc == 0
        });
        if !has_root {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

fn digits(v: u32, p: u32, k: u32) -> [u32; 3] {
    let mut out = [0u32; 3];
    let mut rest = v;
    for d in out.iter_mut().take(k as usize) {
        *d = rest % p;
        rest /= p;
    }
    out
}

fn encode(c: &[u32; 3], p: u32, k: u32) -> u32 {
    let mut v = 0u32;
    for i in (0..k as usize).rev() {
        v = v * p + c[i];
    }
    v
}

/// Schoolbook product reduced by the modulus; used only to build tables.
fn slow_mul(a: u32, b: u32, p: u32, k: u32, modulus: &[u32]) -> u32 {
    let (x, y) = (digits(a, p, k), digits(b, p, k));
    let k = k as usize;
    let mut prod = [0u32; 5];
    for i in 0..k {
        for j in 0..k {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x[i], y[j], p), p);
        }
    }
    for d in (k..2 * k - 1).rev() {
        let top = prod[d];
        if top == 0 {
            continue;
        }
        prod[d] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            prod[d - k + i] = sub_mod(prod[d - k + i], mul_mod(top, m, p), p);
        }
    }
    encode(&[prod[0], prod[1], prod[2]], p, k as u32)
}

fn build_tables(p: u32, k: u32, modulus: &[u32]) -> Tables {
    let q = p.pow(k);
    let n = q - 1;
    let mut exp = vec![0u32; n as usize];
    for g in 1..q {
        let mut x = 1u32;
        let mut ok = true;
        for (e, slot) in exp.iter_mut().enumerate() {
            if e > 0 && x == 1 {
                ok = false;
                break;
            }
            *slot = x;
            x = slow_mul(x, g, p, k, modulus);
        }
        if ok && x == 1 {
            break;
        }
    }
    let mut log = vec![0u32; q as usize];
    for (e, &v) in exp.iter().enumerate() {
        log[v as usize] = e as u32;
    }
    Tables { log, exp }
}

impl ExtField {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Coefficients c₀..c_{k−1} below the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Modulus coefficients in ascending order including the leading 1.
    pub fn modulus_poly(&self) -> Vec<u32> {
        let mut v = self.modulus.clone();
        v.push(1);
        v
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem(0)
    }

    pub fn one(&self) -> ExtElem {
        ExtElem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> {
        (0..self.q).map(ExtElem)
    }

    /// The image of an integer under Z → F_p ⊂ F_{p^k}.
    pub fn from_int(&self, v: i64) -> ExtElem {
        ExtElem(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<ExtElem, ResidueError> {
        if c.len() != self.k as usize || c.iter().any(|&x| x >= self.p) {
            return Err(ResidueError::BadCoordinates);
        }
        let mut buf = [0u32; 3];
        buf[..c.len()].copy_from_slice(c);
        Ok(ExtElem(encode(&buf, self.p, self.k)))
    }

    pub fn coeffs(&self, a: ExtElem) -> Vec<u32> {
        digits(a.0, self.p, self.k)[..self.k as usize].to_vec()
    }

    #[inline]
    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if self.k == 1 {
            return ExtElem(add_mod(a.0, b.0, self.p));
        }
        let (x, y) = (digits(a.0, self.p, self.k), digits(b.0, self.p, self.k));
        let mut s = [0u32; 3];
        for i in 0..self.k as usize {
            s[i] = add_mod(x[i], y[i], self.p);
        }
        ExtElem(encode(&s, self.p, self.k))
    }

    #[inline]
    pub fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if self.k == 1 {
            return ExtElem(sub_mod(a.0, b.0, self.p));
        }
        let (x, y) = (digits(a.0, self.p, self.k), digits(b.0, self.p, self.k));
        let mut s = [0u32; 3];
        for i in 0..self.k as usize {
            s[i] = sub_mod(x[i], y[i], self.p);
        }
        ExtElem(encode(&s, self.p, self.k))
    }

    pub fn neg(&self, a: ExtElem) -> ExtElem {
        self.sub(self.zero(), a)
    }

    #[inline]
    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if a.0 == 0 || b.0 == 0 {
            return ExtElem(0);
        }
        let n = self.q - 1;
        let t = &self.tables;
        let e = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
        ExtElem(t.exp[(e % n as u64) as usize])
    }

    pub fn inv(&self, a: ExtElem) -> Option<ExtElem> {
        if a.0 == 0 {
            return None;
        }
        let n = self.q - 1;
        let l = self.tables.log[a.0 as usize];
        Some(ExtElem(self.tables.exp[((n - l) % n) as usize]))
    }

    pub fn pow(&self, a: ExtElem, e: u64) -> ExtElem {
        if a.0 == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let n = (self.q - 1) as u64;
        let l = self.tables.log[a.0 as usize] as u64;
        ExtElem(self.tables.exp[((l * (e % n)) % n) as usize])
    }

    /// Discrete logarithm with respect to the table generator.
    pub fn log(&self, a: ExtElem) -> Option<u32> {
        (a.0 != 0).then(|| self.tables.log[a.0 as usize])
    }

    /// Number of y with y² = c.
    pub fn square_root_count(&self, c: ExtElem) -> u32 {
        if c.0 == 0 {
            1
        } else if self.p == 2 || self.tables.log[c.0 as usize].is_multiple_of(2) {
            2
        } else {
            0
        }
    }

    /// Quadratic character: 0, 1 or −1.
    pub fn quadratic_character(&self, c: ExtElem) -> i64 {
        self.square_root_count(c) as i64 - 1
    }

    /// Number of y with y³ = c.
    pub fn cube_root_count(&self, c: ExtElem) -> u32 {
        if c.0 == 0 {
            return 1;
        }
        if !(self.q - 1).is_multiple_of(3) {
            return 1;
        }
        if self.tables.log[c.0 as usize].is_multiple_of(3) {
            3
        } else {
            0
        }
    }

    /// For p ≡ 1 mod 3 and nonzero c, the exponent i ∈ {0,1,2} with
    /// c^{(q−1)/3} = ζⁱ, ζ the smallest primitive cube root of unity in F_p.
    pub fn cubic_residue_exponent(&self, c: ExtElem) -> Option<u32> {
        if c.0 == 0 || self.p % 3 != 1 {
            return None;
        }
        let zeta = cube_root_of_unity(self.p)?;
        let n = self.q - 1;
        // ζ = g^{j(q−1)/3} for j ∈ {1,2}.
        let j = self.tables.log[zeta as usize] / (n / 3);
        let l = self.tables.log[c.0 as usize] % 3;
        // c^{(q−1)/3} = g^{l(q−1)/3} = ζ^i with i·j ≡ l mod 3; j⁻¹ = j mod 3.
        Some((l * j) % 3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_modulus_is_x2_plus_1() {
        let f = build_ext_field(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0]);
        assert_eq!(f.order(), 9);
    }

    #[test]
    fn prime_field_case() {
        let f = build_ext_field(5, 1).unwrap();
        assert_eq!(f.modulus(), &[0]);
        assert_eq!(f.order(), 5);
        assert_eq!(f.mul(ExtElem(3), ExtElem(4)), ExtElem(2));
    }

    #[test]
    fn cubic_field_size() {
        assert_eq!(build_ext_field(13, 3).unwrap().order(), 2197);
    }

    #[test]
    fn degree_out_of_range() {
        assert!(matches!(build_ext_field(5, 4), Err(ResidueError::UnsupportedDegree(4))));
        assert!(matches!(build_ext_field(5, 0), Err(ResidueError::UnsupportedDegree(0))));
    }

    #[test]
    fn cube_root_counts() {
        let f7 = build_ext_field(7, 1).unwrap();
        assert_eq!(f7.cube_root_count(ExtElem(0)), 1);
        assert_eq!(f7.cube_root_count(ExtElem(1)), 3);
        let f5 = build_ext_field(5, 1).unwrap();
        for c in f5.elements() {
            assert_eq!(f5.cube_root_count(c), 1);
        }
    }

    #[test]
    fn cube_root_counts_partition_the_field() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (7, 1), (7, 2), (7, 3), (11, 2), (13, 2)] {
            let f = build_ext_field(p, k).unwrap();
            if f.order() > 343 {
                continue;
            }
            let total: u32 = f.elements().map(|c| f.cube_root_count(c)).sum();
            assert_eq!(total, f.order(), "p={p} k={k}");
            // Against direct enumeration of cubes.
            let mut counts = vec![0u32; f.order() as usize];
            for y in f.elements() {
                counts[f.pow(y, 3).0 as usize] += 1;
            }
            for c in f.elements() {
                assert_eq!(f.cube_root_count(c), counts[c.0 as usize]);
            }
        }
    }

    #[test]
    fn log_tables_agree_with_schoolbook_multiplication() {
        for (p, k) in [(3, 2), (5, 3), (7, 2)] {
            let f = build_ext_field(p, k).unwrap();
            for a in f.elements() {
                for b in f.elements().step_by(3) {
                    let slow = slow_mul(a.0, b.0, p, k, f.modulus());
                    assert_eq!(f.mul(a, b).0, slow);
                }
            }
        }
    }

    #[test]
    fn orders_divide_group_order() {
        let f = build_ext_field(7, 3).unwrap();
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, (f.order() - 1) as u64), f.one());
            assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn cubic_exponent_matches_power() {
        let f = build_ext_field(7, 2).unwrap();
        let zeta = f.from_int(2);
        for c in f.elements().skip(1) {
            let i = f.cubic_residue_exponent(c).unwrap();
            assert_eq!(f.pow(c, ((f.order() - 1) / 3) as u64), f.pow(zeta, i as u64));
        }
    }

    #[test]
    fn deterministic_modulus() {
        let a = least_rootless_modulus(11, 3);
        let b = least_rootless_modulus(11, 3);
        assert_eq!(a, b);
    }
}
