//! Square matrices over a [`Field`].

use crate::residue::Field;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<E> {
    n: usize,
    data: Vec<E>,
}

impl<E: Copy + Eq> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_flat(n: usize, data: Vec<E>) -> Option<Self> {
        (data.len() == n * n).then_some(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = self.data.clone();
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        Self { n, data }
    }

    /// Applies `f` entrywise.
    pub fn map(&self, f: impl Fn(E) -> E) -> Self {
        Self { n: self.n, data: self.data.iter().map(|&x| f(x)).collect() }
    }
}

impl<E: Copy + Eq> Matrix<E> {
    pub fn zero<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Self { n, data: vec![f.zero(); n * n] }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zero(f, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn diagonal<F: Field<Elem = E>>(f: &F, diag: &[E]) -> Self {
        let mut m = Self::zero(f, diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    /// I + c·E_{ij}.
    pub fn elementary<F: Field<Elem = E>>(f: &F, n: usize, i: usize, j: usize, c: E) -> Self {
        let mut m = Self::identity(f, n);
        m.set(i, j, f.add(m.get(i, j), c));
        m
    }

    pub fn is_identity<F: Field<Elem = E>>(&self, f: &F) -> bool {
        let (zero, one) = (f.zero(), f.one());
        (0..self.n).all(|i| {
            (0..self.n).all(|j| self.get(i, j) == if i == j { one } else { zero })
        })
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n = self.n;
        debug_assert_eq!(n, other.n);
        let mut data = vec![f.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    data[idx] = f.add(data[idx], f.mul(a, other.data[k * n + j]));
                }
            }
        }
        Self { n, data }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Self { n: self.n, data }
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Self { n: self.n, data }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: E) -> Self {
        self.map(|x| f.mul(c, x))
    }

    pub fn conj<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.map(|x| f.conj(x))
    }

    /// Conjugate transpose.
    pub fn adjoint<F: Field<Elem = E>>(&self, f: &F) -> Self {
        self.transpose().conj(f)
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let n = self.n;
        (0..n)
            .map(|i| {
                (0..n).fold(f.zero(), |acc, j| f.add(acc, f.mul(self.data[i * n + j], v[j])))
            })
            .collect()
    }

    /// Gaussian elimination; returns (det, inverse if det ≠ 0).
    fn eliminate<F: Field<Elem = E>>(&self, f: &F) -> (E, Option<Self>) {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(f, n);
        let mut det = f.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !f.is_zero(a.get(r, col))) else {
                return (f.zero(), None);
            };
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let p = a.get(col, col);
            det = f.mul(det, p);
            let pinv = f.inv(p).expect("nonzero pivot");
            for j in 0..n {
                a.set(col, j, f.mul(a.get(col, j), pinv));
                inv.set(col, j, f.mul(inv.get(col, j), pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let c = a.get(r, col);
                if f.is_zero(c) {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(c, a.get(col, j))));
                    inv.set(r, j, f.sub(inv.get(r, j), f.mul(c, inv.get(col, j))));
                }
            }
        }
        (det, Some(inv))
    }

    pub fn det<F: Field<Elem = E>>(&self, f: &F) -> E {
        self.eliminate(f).0
    }

    pub fn inverse<F: Field<Elem = E>>(&self, f: &F) -> Option<Self> {
        self.eliminate(f).1
    }

    /// Block-diagonal sum.
    pub fn direct_sum<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let n = self.n + other.n;
        let mut m = Self::zero(f, n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.set(self.n + i, self.n + j, other.get(i, j));
            }
        }
        m
    }

    /// Encodes a vector as Σ index(v_i)·q^i.
    pub fn encode_vector<F: Field<Elem = E>>(f: &F, v: &[E]) -> u64 {
        let q = f.order();
        v.iter().rev().fold(0u64, |acc, &x| acc * q + f.index(x))
    }

    pub fn decode_vector<F: Field<Elem = E>>(f: &F, n: usize, mut idx: u64) -> Vec<E> {
        let q = f.order();
        (0..n)
            .map(|_| {
                let x = f.element(idx % q);
                idx /= q;
                x
            })
            .collect()
    }

    /// The action on encoded vectors.
    pub fn apply_index<F: Field<Elem = E>>(&self, f: &F, idx: u64) -> u64 {
        let v = Self::decode_vector(f, self.n, idx);
        Self::encode_vector(f, &self.apply(f, &v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::{InertField, PrimeField};

    #[test]
    fn inverse_and_det() {
        let f = PrimeField::new(7).unwrap();
        let m = Matrix::from_rows(vec![vec![2, 3, 1], vec![0, 1, 4], vec![5, 6, 1]]).unwrap();
        let inv = m.inverse(&f).unwrap();
        assert!(m.mul(&f, &inv).is_identity(&f));
        // 2(1 − 24) − 3(0 − 20) + (0 − 5) = 9
        assert_eq!(m.det(&f), 2);
        let s = Matrix::from_rows(vec![vec![2, 3, 1], vec![0, 1, 4], vec![5, 6, 0]]).unwrap();
        assert_eq!(s.det(&f), 0);
        assert!(s.inverse(&f).is_none());
    }

    #[test]
    fn det_is_multiplicative_over_f25() {
        let f = InertField::new(5).unwrap();
        let a = Matrix::from_rows(vec![vec![[1, 2], [0, 1]], vec![[3, 0], [4, 4]]]).unwrap();
        let b = Matrix::from_rows(vec![vec![[2, 2], [1, 0]], vec![[0, 3], [1, 1]]]).unwrap();
        assert_eq!(a.mul(&f, &b).det(&f), f.mul(a.det(&f), b.det(&f)));
    }

    #[test]
    fn vector_encoding_round_trip() {
        let f = InertField::new(5).unwrap();
        for idx in [0u64, 1, 24, 25, 624, 15624] {
            let v = Matrix::<[u32; 2]>::decode_vector(&f, 3, idx);
            assert_eq!(Matrix::encode_vector(&f, &v), idx);
        }
    }
}
