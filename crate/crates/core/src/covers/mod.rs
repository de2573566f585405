//! Class vectors of Z/d-covers of the projective line (d = 2, 3), their
//! genus and signature, relabelings, and clutching.

pub mod degeneration;

pub use degeneration::{
    find_delta11, render_sweep_table, sweep_delta11, validate_witness, DegenerationWitness,
    Refusal, SweepEntry, SweepOutcome, TableRow,
};

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("only d = 2 and d = 3 are supported (got {0})")]
    UnsupportedDegree(u8),
    #[error("entry {0} is not a unit mod {1}")]
    NotAUnit(u8, u8),
    #[error("entries sum to {sum} mod {d}, not 0")]
    SumNotZero { sum: u32, d: u8 },
    #[error("a class vector needs at least 3 branch points (got {0})")]
    TooFewPoints(usize),
    #[error("d₁ + 2d₂ = {0} is not divisible by 3")]
    NotDivisible(usize),
    #[error("({r}, {s}) is not a trielliptic signature")]
    InvalidSignature { r: i64, s: i64 },
    #[error("class vectors have different d ({0} and {1})")]
    MixedDegree(u8, u8),
    #[error("last entry {last} of the left vector is not inverse to first entry {first} of the right")]
    NotAdmissible { last: u8, first: u8 },
    #[error("refused: {0}")]
    Refused(Refusal),
    #[error("genus bound {0} exceeds the sweep limit of 64")]
    SweepTooLarge(u32),
}

fn check_degree(d: u8) -> Result<(), CoverError> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(CoverError::UnsupportedDegree(d))
    }
}

/// γ(1..r): the inertia generators at the labeled branch points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassVector {
    d: u8,
    entries: Vec<u8>,
}

impl ClassVector {
    pub fn new(d: u8, entries: Vec<u8>) -> Result<Self, CoverError> {
        check_degree(d)?;
        if let Some(&bad) = entries.iter().find(|&&h| h == 0 || h >= d) {
            return Err(CoverError::NotAUnit(bad, d));
        }
        if entries.len() < 3 {
            return Err(CoverError::TooFewPoints(entries.len()));
        }
        let sum = entries.iter().map(|&h| h as u32).sum::<u32>() % d as u32;
        if sum != 0 {
            return Err(CoverError::SumNotZero { sum, d });
        }
        Ok(Self { d, entries })
    }

    /// A class vector realizing the inertia type, entries in ascending order.
    pub fn from_inertia(t: &InertiaType) -> Result<Self, CoverError> {
        let entries = t
            .counts
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n((i + 1) as u8, c))
            .collect();
        Self::new(t.d, entries)
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// Number of branch points r.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first(&self) -> u8 {
        self.entries[0]
    }

    pub fn last(&self) -> u8 {
        self.entries[self.entries.len() - 1]
    }

    /// g = 1 − d + r(d − 1)/2.
    pub fn genus(&self) -> u32 {
        let (d, r) = (self.d as i64, self.entries.len() as i64);
        let twice = 2 - 2 * d + r * (d - 1);
        (twice / 2) as u32
    }

    pub fn inertia_type(&self) -> InertiaType {
        let mut counts = vec![0usize; self.d as usize - 1];
        for &h in &self.entries {
            counts[h as usize - 1] += 1;
        }
        InertiaType { d: self.d, counts }
    }

    /// Relabels the branch points so the entries are ascending.
    pub fn canonicalize(&self) -> Self {
        let mut entries = self.entries.clone();
        entries.sort_unstable();
        Self { d: self.d, entries }
    }

    /// Relabels the group action by h ↦ −h.
    pub fn negate(&self) -> Self {
        let entries = self.entries.iter().map(|&h| self.d - h).collect();
        Self { d: self.d, entries }
    }
}

impl fmt::Display for ClassVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|h| h.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Clutching: glue the last point of `v1` to the first of `v2`.
pub fn deform(v1: &ClassVector, v2: &ClassVector) -> Result<ClassVector, CoverError> {
    if v1.d != v2.d {
        return Err(CoverError::MixedDegree(v1.d, v2.d));
    }
    let (last, first) = (v1.last(), v2.first());
    if (last + first) % v1.d != 0 {
        return Err(CoverError::NotAdmissible { last, first });
    }
    let mut entries = v1.entries[..v1.len() - 1].to_vec();
    entries.extend_from_slice(&v2.entries[1..]);
    ClassVector::new(v1.d, entries)
}

/// The multiset underlying a class vector: `counts[h − 1]` points have
/// inertia generator h.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InertiaType {
    d: u8,
    counts: Vec<usize>,
}

impl InertiaType {
    pub fn new(d: u8, counts: Vec<usize>) -> Result<Self, CoverError> {
        check_degree(d)?;
        if counts.len() != d as usize - 1 {
            return Err(CoverError::UnsupportedDegree(d));
        }
        let t = Self { d, counts };
        ClassVector::from_inertia(&t)?;
        Ok(t)
    }

    pub fn hyperelliptic(g: u32) -> Result<Self, CoverError> {
        Self::new(2, vec![2 * g as usize + 2])
    }

    pub fn trielliptic(d1: usize, d2: usize) -> Result<Self, CoverError> {
        if !(d1 + 2 * d2).is_multiple_of(3) {
            return Err(CoverError::NotDivisible(d1 + 2 * d2));
        }
        Self::new(3, vec![d1, d2])
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn genus(&self) -> u32 {
        ClassVector::from_inertia(self).expect("validated on construction").genus()
    }

    /// (d₁, d₂) for d = 3.
    pub fn tri_counts(&self) -> Option<(usize, usize)> {
        (self.d == 3).then(|| (self.counts[0], self.counts[1]))
    }
}

impl fmt::Display for InertiaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "d={} [{}]", self.d, parts.join(","))
    }
}

/// Ranks (r, s) of the ζ- and ζ²-eigenspaces of holomorphic differentials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriSignature {
    pub r: u32,
    pub s: u32,
}

impl TriSignature {
    pub fn new(r: u32, s: u32) -> Result<Self, CoverError> {
        let sig = Self { r, s };
        if !sig.is_valid() {
            return Err(CoverError::InvalidSignature { r: r as i64, s: s as i64 });
        }
        Ok(sig)
    }

    pub fn genus(&self) -> u32 {
        self.r + self.s
    }

    /// (g − 1)/3 ≤ r, s ≤ (2g + 1)/3.
    pub fn is_valid(&self) -> bool {
        let g = self.genus() as i64;
        [self.r as i64, self.s as i64]
            .iter()
            .all(|&x| 3 * x >= g - 1 && 3 * x <= 2 * g + 1)
    }

    /// d₁ = 2r − s + 1, d₂ = 2s − r + 1.
    pub fn inertia_type(&self) -> Result<InertiaType, CoverError> {
        let (r, s) = (self.r as i64, self.s as i64);
        let (d1, d2) = (2 * r - s + 1, 2 * s - r + 1);
        if d1 < 0 || d2 < 0 {
            return Err(CoverError::InvalidSignature { r, s });
        }
        InertiaType::trielliptic(d1 as usize, d2 as usize)
    }
}

impl fmt::Display for TriSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.s)
    }
}

/// (r, s) = (g − N + 1, N − 1) with N = (d₁ + 2d₂)/3.
pub fn signature_of(t: &InertiaType) -> Result<TriSignature, CoverError> {
    let (d1, d2) = t.tri_counts().ok_or(CoverError::UnsupportedDegree(t.d))?;
    if (d1 + 2 * d2) % 3 != 0 {
        return Err(CoverError::NotDivisible(d1 + 2 * d2));
    }
    let n = ((d1 + 2 * d2) / 3) as i64;
    let g = (d1 + d2) as i64 - 2;
    let (r, s) = (g - n + 1, n - 1);
    if r < 0 || s < 0 {
        return Err(CoverError::InvalidSignature { r, s });
    }
    Ok(TriSignature { r: r as u32, s: s as u32 })
}

/// All trielliptic signatures for genus g, ascending in r.
pub fn enumerate_signatures(g: u32) -> Vec<TriSignature> {
    (0..=g)
        .map(|r| TriSignature { r, s: g - r })
        .filter(TriSignature::is_valid)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        assert_eq!(ClassVector::new(2, vec![1; 8]).unwrap().genus(), 3);
        assert_eq!(ClassVector::new(3, vec![1, 1, 1, 1, 2]).unwrap().genus(), 3);
        assert_eq!(ClassVector::new(3, vec![1, 1, 1]).unwrap().genus(), 1);
    }

    #[test]
    fn invalid_vectors() {
        assert!(matches!(ClassVector::new(3, vec![1, 1, 2]), Err(CoverError::SumNotZero { .. })));
        assert!(matches!(ClassVector::new(3, vec![1, 2]), Err(CoverError::TooFewPoints(2))));
        assert!(matches!(ClassVector::new(5, vec![1, 4, 0]), Err(CoverError::UnsupportedDegree(5))));
        assert!(matches!(ClassVector::new(3, vec![0, 1, 2]), Err(CoverError::NotAUnit(0, 3))));
    }

    #[test]
    fn signature_examples() {
        let t = InertiaType::trielliptic(4, 1).unwrap();
        assert_eq!(signature_of(&t).unwrap(), TriSignature { r: 2, s: 1 });
        let t = InertiaType::trielliptic(3, 0).unwrap();
        assert_eq!(signature_of(&t).unwrap(), TriSignature { r: 1, s: 0 });
        assert!(matches!(InertiaType::trielliptic(5, 0), Err(CoverError::NotDivisible(5))));
    }

    #[test]
    fn enumerate_small_genera() {
        let sig = |v: &[(u32, u32)]| v.iter().map(|&(r, s)| TriSignature { r, s }).collect::<Vec<_>>();
        assert_eq!(enumerate_signatures(3), sig(&[(1, 2), (2, 1)]));
        assert_eq!(enumerate_signatures(4), sig(&[(1, 3), (2, 2), (3, 1)]));
        assert_eq!(enumerate_signatures(1), sig(&[(0, 1), (1, 0)]));
    }

    #[test]
    fn relabelings() {
        let v = ClassVector::new(3, vec![2, 1, 1, 2]).unwrap();
        assert_eq!(v.canonicalize().entries(), &[1, 1, 2, 2]);
        assert_eq!(v.canonicalize().canonicalize(), v.canonicalize());
        let e = ClassVector::new(3, vec![1, 1, 1]).unwrap();
        assert_eq!(e.negate().entries(), &[2, 2, 2]);
        assert_eq!(v.negate().negate(), v);
    }

    #[test]
    fn negation_swaps_signature() {
        let t = InertiaType::trielliptic(4, 1).unwrap();
        let v = ClassVector::from_inertia(&t).unwrap().negate();
        let sig = signature_of(&v.inertia_type()).unwrap();
        assert_eq!(sig, TriSignature { r: 1, s: 2 });
    }

    #[test]
    fn clutching() {
        let a = ClassVector::new(3, vec![1, 1, 1]).unwrap();
        let b = ClassVector::new(3, vec![2, 2, 2]).unwrap();
        let glued = deform(&a, &b).unwrap();
        assert_eq!(glued.entries(), &[1, 1, 2, 2]);
        assert_eq!(glued.genus(), 2);
        assert!(matches!(deform(&a, &a), Err(CoverError::NotAdmissible { last: 1, first: 1 })));
        let h = ClassVector::new(2, vec![1; 4]).unwrap();
        assert_eq!(deform(&h, &h).unwrap().genus(), 2);
    }
}
