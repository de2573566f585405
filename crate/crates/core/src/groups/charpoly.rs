//! Characteristic polynomials via reduction to Hessenberg form.

use super::matrix::Matrix;
use crate::residue::Field;

/// Coefficients of det(x·I − M), ascending, monic of degree n.
pub fn char_poly<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Vec<F::Elem> {
    let n = m.dim();
    let mut h = m.clone();
    // Similarity transforms to upper Hessenberg form.
    for j in 0..n.saturating_sub(2) {
        let Some(p) = (j + 1..n).find(|&i| !f.is_zero(h.get(i, j))) else {
            continue;
        };
        if p != j + 1 {
            for k in 0..n {
                let (a, b) = (h.get(p, k), h.get(j + 1, k));
                h.set(p, k, b);
                h.set(j + 1, k, a);
            }
            for k in 0..n {
                let (a, b) = (h.get(k, p), h.get(k, j + 1));
                h.set(k, p, b);
                h.set(k, j + 1, a);
            }
        }
        let pinv = f.inv(h.get(j + 1, j)).expect("nonzero pivot");
        for i in j + 2..n {
            let c = f.mul(h.get(i, j), pinv);
            if f.is_zero(c) {
                continue;
            }
            for k in 0..n {
                h.set(i, k, f.sub(h.get(i, k), f.mul(c, h.get(j + 1, k))));
            }
            for k in 0..n {
                h.set(k, j + 1, f.add(h.get(k, j + 1), f.mul(c, h.get(k, i))));
            }
        }
    }
    // p_k = (x − h_kk)·p_{k−1} − Σ_{i<k} h_ik·(h_{i+1,i}⋯h_{k,k−1})·p_{i−1}
    let mut polys: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![f.zero(); k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(h.get(k, k), c));
        }
        let mut sub = f.one();
        for i in (0..k).rev() {
            sub = f.mul(sub, h.get(i + 1, i));
            let coef = f.mul(h.get(i, k), sub);
            if f.is_zero(coef) {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least the constant polynomial")
}

/// For monic h of degree g with h(0) ≠ 0, the monic polynomial whose roots
/// are m/β over the roots β of h: h(0)⁻¹·Σ c_i m^i x^{g−i}.
pub fn dual_reciprocal<F: Field>(f: &F, h: &[F::Elem], m: F::Elem) -> Option<Vec<F::Elem>> {
    let g = h.len().checked_sub(1)?;
    let c0inv = f.inv(h[0])?;
    let mut out = vec![f.zero(); g + 1];
    let mut mp = f.one();
    for (i, &c) in h.iter().enumerate() {
        out[g - i] = f.mul(c0inv, f.mul(c, mp));
        mp = f.mul(mp, m);
    }
    Some(out)
}

pub fn poly_mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::{InertField, PrimeField};

    /// Leibniz-formula determinant of x·I − M evaluated at every x, compared
    /// against the polynomial.
    fn check_by_evaluation<F: Field>(f: &F, m: &Matrix<F::Elem>) {
        let p = char_poly(f, m);
        let n = m.dim();
        assert_eq!(p.len(), n + 1);
        assert_eq!(p[n], f.one());
        for x in f.elements() {
            let xi = Matrix::identity(f, n).scale(f, x).sub(f, m);
            let val = p.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c));
            assert_eq!(val, xi.det(f));
        }
    }

    #[test]
    fn identity() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(char_poly(&f, &Matrix::identity(&f, 2)), vec![1, 3, 1]);
    }

    #[test]
    fn companion_matrix() {
        let f = PrimeField::new(7).unwrap();
        // x³ + 2x² + 5x + 3
        let c = Matrix::from_rows(vec![vec![0, 0, 4], vec![1, 0, 2], vec![0, 1, 5]]).unwrap();
        assert_eq!(char_poly(&f, &c), vec![3, 5, 2, 1]);
    }

    #[test]
    fn agrees_with_determinants() {
        let f = PrimeField::new(5).unwrap();
        let m = Matrix::from_rows(vec![
            vec![0, 0, 1, 2],
            vec![0, 3, 0, 1],
            vec![4, 0, 0, 0],
            vec![1, 2, 3, 4],
        ])
        .unwrap();
        check_by_evaluation(&f, &m);
        let g = InertField::new(5).unwrap();
        let m = Matrix::from_rows(vec![
            vec![[0, 0], [1, 2], [3, 3]],
            vec![[0, 0], [0, 0], [2, 1]],
            vec![[4, 1], [0, 3], [1, 0]],
        ])
        .unwrap();
        check_by_evaluation(&g, &m);
    }

    #[test]
    fn dual_reciprocal_roots() {
        let f = PrimeField::new(11).unwrap();
        // h = (x − 2)(x − 3), m = 7: roots 7/2 = 9, 7/3 = 6
        let h = vec![6, 6, 1];
        let hs = dual_reciprocal(&f, &h, 7).unwrap();
        assert_eq!(hs, poly_mul(&f, &[11 - 9, 1], &[11 - 6, 1]));
    }
}
