//! Deterministic Schreier–Sims for matrix groups acting on vectors.
//!
//! Points of the action are vectors of F^n encoded as integers (see
//! [`Matrix::encode_vector`]).  Group elements stay matrices throughout;
//! transversals keep both u_β and u_β⁻¹ so sifting never inverts.

use rand::Rng;

use super::matrix::Matrix;
use super::GroupError;
use crate::residue::Field;

/// Largest permutation domain (number of nonzero vectors) we accept.
pub const MAX_DOMAIN: u64 = 1_000_000;

const ABSENT: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Level<E> {
    base: u64,
    orbit: Vec<u64>,
    /// Dense lookup: vector index → position in `orbit`.
    pos: Vec<u32>,
    reps: Vec<Matrix<E>>,
    inv_reps: Vec<Matrix<E>>,
}

/// A matrix group given by generators together with a base and strong
/// generating set.
#[derive(Debug, Clone)]
pub struct GroupAtlas<F: Field> {
    field: F,
    n: usize,
    generators: Vec<Matrix<F::Elem>>,
    strong: Vec<Matrix<F::Elem>>,
    strong_inv: Vec<Matrix<F::Elem>>,
    levels: Vec<Level<F::Elem>>,
}

impl<F: Field> GroupAtlas<F> {
    pub fn new(field: F, n: usize, generators: Vec<Matrix<F::Elem>>) -> Result<Self, GroupError> {
        let q = field.order();
        let domain = q.checked_pow(n as u32).map(|v| v - 1).unwrap_or(u64::MAX);
        if domain > MAX_DOMAIN {
            return Err(GroupError::DomainTooLarge(domain));
        }
        for g in &generators {
            if g.dim() != n {
                return Err(GroupError::DimensionMismatch { expected: n, found: g.dim() });
            }
        }
        let mut strong: Vec<Matrix<F::Elem>> = Vec::new();
        let mut strong_inv = Vec::new();
        for g in &generators {
            if g.is_identity(&field) || strong.contains(g) {
                continue;
            }
            let inv = g.inverse(&field).ok_or(GroupError::NotInvertible)?;
            strong.push(g.clone());
            strong_inv.push(inv);
        }
        let mut atlas = Self {
            field,
            n,
            generators,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for (g, inv) in strong.into_iter().zip(strong_inv) {
            if atlas.levels.iter().all(|l| g.apply_index(&atlas.field, l.base) == l.base) {
                let b = atlas.first_moved_basis_vector(&g);
                atlas.levels.push(atlas.empty_level(b));
            }
            atlas.strong.push(g);
            atlas.strong_inv.push(inv);
        }
        for l in 0..atlas.levels.len() {
            atlas.rebuild_level(l);
        }
        atlas.schreier_sims();
        Ok(atlas)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Matrix<F::Elem>] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Matrix<F::Elem>] {
        &self.strong
    }

    /// Base points as encoded vectors.
    pub fn base(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn base_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.levels
            .iter()
            .map(|l| Matrix::decode_vector(&self.field, self.n, l.base))
            .collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    fn first_moved_basis_vector(&self, g: &Matrix<F::Elem>) -> u64 {
        let f = &self.field;
        let q = f.order();
        (0..self.n)
            .map(|i| q.pow(i as u32) * f.index(f.one()))
            .find(|&e| g.apply_index(f, e) != e)
            .expect("a non-identity matrix moves some basis vector")
    }

    fn empty_level(&self, base: u64) -> Level<F::Elem> {
        let size = self.field.order().pow(self.n as u32) as usize;
        Level { base, orbit: Vec::new(), pos: vec![ABSENT; size], reps: Vec::new(), inv_reps: Vec::new() }
    }

    /// Indices of strong generators fixing the first `l` base points.
    fn level_gens(&self, l: usize) -> Vec<usize> {
        (0..self.strong.len())
            .filter(|&s| {
                self.levels[..l]
                    .iter()
                    .all(|lv| self.strong[s].apply_index(&self.field, lv.base) == lv.base)
            })
            .collect()
    }

    fn rebuild_level(&mut self, l: usize) {
        let gens = self.level_gens(l);
        let f = self.field.clone();
        let id = Matrix::identity(&f, self.n);
        let strong = &self.strong;
        let strong_inv = &self.strong_inv;
        let level = &mut self.levels[l];
        for &p in &level.orbit {
            level.pos[p as usize] = ABSENT;
        }
        level.orbit.clear();
        level.reps.clear();
        level.inv_reps.clear();
        level.orbit.push(level.base);
        level.pos[level.base as usize] = 0;
        level.reps.push(id.clone());
        level.inv_reps.push(id);
        let mut head = 0;
        while head < level.orbit.len() {
            let gamma = level.orbit[head];
            for &s in &gens {
                let delta = strong[s].apply_index(&f, gamma);
                if level.pos[delta as usize] != ABSENT {
                    continue;
                }
                level.pos[delta as usize] = level.orbit.len() as u32;
                level.orbit.push(delta);
                let rep = strong[s].mul(&f, &level.reps[head]);
                let inv = level.inv_reps[head].mul(&f, &strong_inv[s]);
                level.reps.push(rep);
                level.inv_reps.push(inv);
            }
            head += 1;
        }
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// where sifting stopped (`levels.len()` if it passed every level).
    fn sift_from(&self, mut g: Matrix<F::Elem>, from: usize) -> (Matrix<F::Elem>, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply_index(&self.field, level.base);
            let p = level.pos[beta as usize];
            if p == ABSENT {
                return (g, l);
            }
            g = level.inv_reps[p as usize].mul(&self.field, &g);
        }
        (g, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        let f = self.field.clone();
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let l = i - 1;
            let gens = self.level_gens(l);
            let orbit_len = self.levels[l].orbit.len();
            for p in 0..orbit_len {
                for &s in &gens {
                    let level = &self.levels[l];
                    let beta = level.orbit[p];
                    let image = self.strong[s].apply_index(&f, beta);
                    let q = level.pos[image as usize] as usize;
                    let su = self.strong[s].mul(&f, &level.reps[p]);
                    if su == level.reps[q] {
                        continue;
                    }
                    let y = level.inv_reps[q].mul(&f, &su);
                    let (h, j) = self.sift_from(y, l + 1);
                    if j == self.levels.len() && h.is_identity(&f) {
                        continue;
                    }
                    if j == self.levels.len() {
                        let b = self.first_moved_basis_vector(&h);
                        let lv = self.empty_level(b);
                        self.levels.push(lv);
                    }
                    let inv = h.inverse(&f).expect("group elements are invertible");
                    self.strong.push(h);
                    self.strong_inv.push(inv);
                    for m in l + 1..=j {
                        self.rebuild_level(m);
                    }
                    i = j + 1;
                    continue 'outer;
                }
            }
            i -= 1;
        }
    }

    pub fn contains(&self, g: &Matrix<F::Elem>) -> bool {
        if g.dim() != self.n {
            return false;
        }
        let (h, j) = self.sift_from(g.clone(), 0);
        j == self.levels.len() && h.is_identity(&self.field)
    }

    /// Exactly uniform: a product of uniformly chosen transversal
    /// representatives, one per level.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix<F::Elem> {
        let mut g = Matrix::identity(&self.field, self.n);
        for level in &self.levels {
            let k = rng.random_range(0..level.reps.len());
            g = g.mul(&self.field, &level.reps[k]);
        }
        g
    }

    /// Calls `visit` on every element exactly once, in a fixed order.
    pub fn for_each_element(&self, mut visit: impl FnMut(&Matrix<F::Elem>)) {
        let id = Matrix::identity(&self.field, self.n);
        self.walk(0, &id, &mut visit);
    }

    /// Like [`Self::for_each_element`] but restricted to elements whose first
    /// transversal factor is the representative at position `first`.
    pub fn for_each_element_in_branch(&self, first: usize, mut visit: impl FnMut(&Matrix<F::Elem>)) {
        match self.levels.first() {
            None => {
                if first == 0 {
                    visit(&Matrix::identity(&self.field, self.n));
                }
            }
            Some(level) => {
                let prefix = level.reps[first].clone();
                self.walk(1, &prefix, &mut visit);
            }
        }
    }

    /// Number of branches accepted by [`Self::for_each_element_in_branch`].
    pub fn branch_count(&self) -> usize {
        self.levels.first().map_or(1, |l| l.reps.len())
    }

    fn walk(&self, l: usize, prefix: &Matrix<F::Elem>, visit: &mut impl FnMut(&Matrix<F::Elem>)) {
        if l == self.levels.len() {
            visit(prefix);
            return;
        }
        for rep in &self.levels[l].reps {
            let next = prefix.mul(&self.field, rep);
            self.walk(l + 1, &next, visit);
        }
    }
}

/// Exact order of the group generated by `gens` acting on F^n.
pub fn bsgs_order<F: Field>(field: &F, n: usize, gens: &[Matrix<F::Elem>]) -> Result<u128, GroupError> {
    Ok(GroupAtlas::new(field.clone(), n, gens.to_vec())?.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residue::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sl_gens(f: &PrimeField, n: usize) -> Vec<Matrix<u32>> {
        (0..n - 1)
            .flat_map(|i| {
                [Matrix::elementary(f, n, i, i + 1, 1), Matrix::elementary(f, n, i + 1, i, 1)]
            })
            .collect()
    }

    #[test]
    fn trivial_group() {
        let f = PrimeField::new(5).unwrap();
        let atlas = GroupAtlas::new(f, 3, vec![Matrix::identity(&f, 3)]).unwrap();
        assert_eq!(atlas.order(), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(atlas.random_element(&mut rng).is_identity(&f));
    }

    #[test]
    fn sl4_7_orbit_sizes() {
        let f = PrimeField::new(7).unwrap();
        let atlas = GroupAtlas::new(f, 4, sl_gens(&f, 4)).unwrap();
        assert_eq!(atlas.orbit_sizes(), vec![2400, 2394, 2352, 343]);
    }

    #[test]
    fn membership() {
        let f = PrimeField::new(5).unwrap();
        let atlas = GroupAtlas::new(f, 3, sl_gens(&f, 3)).unwrap();
        assert_eq!(atlas.order(), 372000);
        let d = Matrix::diagonal(&f, &[2, 1, 1]);
        assert!(!atlas.contains(&d));
        let d1 = Matrix::diagonal(&f, &[2, 3, 1]);
        assert!(atlas.contains(&d1));
    }

    #[test]
    fn enumeration_visits_every_element_once() {
        let f = PrimeField::new(3).unwrap();
        let atlas = GroupAtlas::new(f, 2, sl_gens(&f, 2)).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        atlas.for_each_element(|g| {
            assert_eq!(g.det(&f), 1);
            seen.insert(g.clone());
        });
        assert_eq!(seen.len(), 24);
        let mut by_branch = 0;
        for b in 0..atlas.branch_count() {
            atlas.for_each_element_in_branch(b, |_| by_branch += 1);
        }
        assert_eq!(by_branch, 24);
    }

    #[test]
    fn domain_limit() {
        let f = PrimeField::new(11).unwrap();
        assert!(matches!(
            GroupAtlas::new(f, 6, vec![]),
            Err(GroupError::DomainTooLarge(_))
        ));
    }

    #[test]
    fn singular_generator_rejected() {
        let f = PrimeField::new(5).unwrap();
        let z = Matrix::diagonal(&f, &[0, 1]);
        assert!(matches!(bsgs_order(&f, 2, &[z]), Err(GroupError::NotInvertible)));
    }
}
