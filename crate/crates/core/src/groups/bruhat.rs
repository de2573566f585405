//! Bruhat decomposition M = u₁·w·t·u₂ in SL_n by two-sided elimination.
//!
//! Columns are processed left to right.  The pivot in each column is the
//! lowest nonzero entry among rows not yet used; entries above it are
//! cleared with row operations (row i += c·row r, i < r) and the rest of the
//! pivot row with column operations (col k += c·col j, k > j).  Both kinds
//! of operation are multiplication by upper unitriangular matrices, so what
//! remains is monomial.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bsgs::GroupAtlas;
use super::generators::sl_generators;
use super::matrix::Matrix;
use super::GroupError;
use crate::parallel::indexed_rng;
use crate::residue::{Field, PrimeField};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruhatFactors<E> {
    pub u1: Matrix<E>,
    /// Permutation matrix with w[π(j)][j] = 1.
    pub w: Matrix<E>,
    pub t: Matrix<E>,
    pub u2: Matrix<E>,
    /// π as a list: column j of w has its 1 in row `perm[j]`.
    pub perm: Vec<usize>,
}

impl<E: Copy + Eq> BruhatFactors<E> {
    pub fn recompose<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        self.u1.mul(f, &self.w).mul(f, &self.t).mul(f, &self.u2)
    }
}

pub fn is_upper_unitriangular<F: Field>(f: &F, m: &Matrix<F::Elem>) -> bool {
    let n = m.dim();
    (0..n).all(|i| {
        m.get(i, i) == f.one() && (0..i).all(|j| f.is_zero(m.get(i, j)))
    })
}

pub fn bruhat_decompose<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Result<BruhatFactors<F::Elem>, GroupError> {
    if m.det(f) != f.one() {
        return Err(GroupError::NotDeterminantOne);
    }
    let n = m.dim();
    let mut a = m.clone();
    let mut left = Matrix::identity(f, n);
    let mut right = Matrix::identity(f, n);
    let mut used = vec![false; n];
    let mut perm = vec![0usize; n];

    for j in 0..n {
        let r = (0..n)
            .rev()
            .find(|&r| !used[r] && !f.is_zero(a.get(r, j)))
            .expect("invertible matrix has a pivot in every column");
        used[r] = true;
        perm[j] = r;
        let pinv = f.inv(a.get(r, j)).expect("nonzero pivot");
        for i in 0..r {
            let c = f.mul(a.get(i, j), pinv);
            if f.is_zero(c) {
                continue;
            }
            for k in 0..n {
                a.set(i, k, f.sub(a.get(i, k), f.mul(c, a.get(r, k))));
                left.set(i, k, f.sub(left.get(i, k), f.mul(c, left.get(r, k))));
            }
        }
        for k in j + 1..n {
            let c = f.mul(a.get(r, k), pinv);
            if f.is_zero(c) {
                continue;
            }
            for i in 0..n {
                a.set(i, k, f.sub(a.get(i, k), f.mul(c, a.get(i, j))));
                right.set(i, k, f.sub(right.get(i, k), f.mul(c, right.get(i, j))));
            }
        }
    }

    let mut w = Matrix::zero(f, n);
    let mut diag = Vec::with_capacity(n);
    for (j, &r) in perm.iter().enumerate() {
        w.set(r, j, f.one());
        diag.push(a.get(r, j));
    }
    Ok(BruhatFactors {
        u1: left.inverse(f).expect("unitriangular"),
        w,
        t: Matrix::diagonal(f, &diag),
        u2: right.inverse(f).expect("unitriangular"),
        perm,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruhatSelftest {
    pub n: usize,
    pub ell: u32,
    pub seed: u64,
    pub count: u64,
    pub failures: u64,
}

/// Decomposes `count` seeded random elements of SL_n(Z/ℓ) and checks the
/// factor shapes and exact recomposition.
pub fn bruhat_selftest(n: usize, ell: u32, count: u64, seed: u64) -> Result<BruhatSelftest, GroupError> {
    let f = PrimeField::new(ell)?;
    if ell == 2 {
        return Err(GroupError::EvenCharacteristic);
    }
    let atlas = GroupAtlas::new(f, n, sl_generators(&f, n))?;
    let failures = (0..count)
        .into_par_iter()
        .filter(|&i| {
            let m = atlas.random_element(&mut indexed_rng(seed, i));
            match bruhat_decompose(&f, &m) {
                Ok(b) => {
                    let diagonal = (0..n).all(|r| (0..n).all(|c| r == c || b.t.get(r, c) == 0));
                    let permutation = (0..n).all(|c| b.w.get(b.perm[c], c) == 1)
                        && b.w.rows().iter().all(|row| row.iter().filter(|&&x| x != 0).count() == 1);
                    !(is_upper_unitriangular(&f, &b.u1)
                        && is_upper_unitriangular(&f, &b.u2)
                        && diagonal
                        && permutation
                        && b.recompose(&f) == m)
                }
                Err(_) => true,
            }
        })
        .count() as u64;
    Ok(BruhatSelftest { n, ell, seed, count, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_decomposes_trivially() {
        let f = PrimeField::new(5).unwrap();
        let id = Matrix::identity(&f, 3);
        let b = bruhat_decompose(&f, &id).unwrap();
        assert!(b.u1.is_identity(&f) && b.w.is_identity(&f) && b.t.is_identity(&f) && b.u2.is_identity(&f));
    }

    #[test]
    fn even_permutation_is_its_own_cell() {
        let f = PrimeField::new(5).unwrap();
        // 3-cycle, determinant 1
        let p = Matrix::from_rows(vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let b = bruhat_decompose(&f, &p).unwrap();
        assert!(b.u1.is_identity(&f) && b.t.is_identity(&f) && b.u2.is_identity(&f));
        assert_eq!(b.w, p);
    }

    #[test]
    fn rejects_wrong_determinant() {
        let f = PrimeField::new(5).unwrap();
        let d = Matrix::diagonal(&f, &[2, 1]);
        assert!(matches!(bruhat_decompose(&f, &d), Err(GroupError::NotDeterminantOne)));
    }

    #[test]
    fn factors_have_the_right_shape() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6], vec![0, 1, 1]]).unwrap();
        // det = 1(5−6) − 2(4−0) + 3(4−0) = 3; rescale the first row by 3⁻¹ = 5.
        let mut m = m;
        for j in 0..3 {
            m.set(0, j, f.mul(5, m.get(0, j)));
        }
        assert_eq!(m.det(&f), 1);
        let b = bruhat_decompose(&f, &m).unwrap();
        assert!(is_upper_unitriangular(&f, &b.u1));
        assert!(is_upper_unitriangular(&f, &b.u2));
        assert_eq!(b.recompose(&f), m);
        assert_eq!(b.w.mul(&f, &b.t).det(&f), 1);
    }

    #[test]
    fn selftest_sl3_mod_5() {
        let r = bruhat_selftest(3, 5, 200, 1).unwrap();
        assert_eq!((r.count, r.failures), (200, 0));
    }
}
