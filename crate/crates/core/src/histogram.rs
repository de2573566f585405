//! Histograms of monic polynomials over Z/ℓ.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HistogramError {
    #[error("key {key:?} is not a monic degree-{degree} polynomial over Z/{ell}")]
    BadKey { key: Vec<u32>, ell: u32, degree: usize },
    #[error("histograms live in different key spaces (ℓ={0}, deg {1} vs ℓ={2}, deg {3})")]
    KeySpace(u32, usize, u32, usize),
    #[error("csv line {line}: {reason}")]
    Csv { line: usize, reason: String },
}

/// Counts of characteristic polynomials.  Keys are coefficient vectors in
/// ascending order, c₀..c_d with c_d = 1, entries in [0, ℓ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharPolyHistogram {
    pub ell: u32,
    pub degree: usize,
    #[serde(with = "key_list")]
    pub counts: BTreeMap<Vec<u32>, u64>,
}

impl CharPolyHistogram {
    pub fn new(ell: u32, degree: usize) -> Self {
        Self { ell, degree, counts: BTreeMap::new() }
    }

    pub fn is_valid_key(&self, key: &[u32]) -> bool {
        key.len() == self.degree + 1 && key[self.degree] == 1 && key.iter().all(|&c| c < self.ell)
    }

    pub fn add(&mut self, key: Vec<u32>, count: u64) -> Result<(), HistogramError> {
        if !self.is_valid_key(&key) {
            return Err(HistogramError::BadKey { key, ell: self.ell, degree: self.degree });
        }
        if count > 0 {
            *self.counts.entry(key).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn same_space(&self, other: &Self) -> Result<(), HistogramError> {
        if self.ell != other.ell || self.degree != other.degree {
            return Err(HistogramError::KeySpace(self.ell, self.degree, other.ell, other.degree));
        }
        Ok(())
    }

    pub fn merge(&mut self, other: &Self) -> Result<(), HistogramError> {
        self.same_space(other)?;
        for (k, &v) in &other.counts {
            *self.counts.entry(k.clone()).or_insert(0) += v;
        }
        Ok(())
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn support_size(&self) -> usize {
        self.counts.len()
    }

    pub fn get(&self, key: &[u32]) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    /// One line per key: `c0,…,cd,count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (0..=self.degree).map(|i| format!("c{i}")).collect();
        let _ = writeln!(out, "{},count", header.join(","));
        for (k, v) in &self.counts {
            let cols: Vec<String> = k.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "{},{v}", cols.join(","));
        }
        out
    }

    pub fn from_csv(ell: u32, text: &str) -> Result<Self, HistogramError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(HistogramError::Csv { line: 1, reason: "empty".into() })?;
        let cols = header.split(',').count();
        if cols < 2 {
            return Err(HistogramError::Csv { line: 1, reason: "need coefficient columns".into() });
        }
        let mut h = Self::new(ell, cols - 2);
        for (i, line) in lines {
            let parse = |s: &str| {
                s.trim().parse::<u64>().map_err(|e| HistogramError::Csv { line: i + 1, reason: e.to_string() })
            };
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != cols {
                return Err(HistogramError::Csv { line: i + 1, reason: "wrong column count".into() });
            }
            let key = fields[..cols - 1]
                .iter()
                .map(|s| parse(s).map(|v| v as u32))
                .collect::<Result<Vec<_>, _>>()?;
            h.add(key, parse(fields[cols - 1])?)?;
        }
        Ok(h)
    }
}

/// Serializes the map as a list of `{"key": [...], "count": n}` records so
/// the JSON stays valid and ordered.
mod key_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        key: Vec<u32>,
        count: u64,
    }

    pub fn serialize<S: Serializer>(map: &BTreeMap<Vec<u32>, u64>, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = map.iter().map(|(k, &v)| Entry { key: k.clone(), count: v }).collect();
        entries.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Vec<u32>, u64>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        let mut map = BTreeMap::new();
        for e in entries {
            *map.entry(e.key).or_insert(0) += e.count;
        }
        Ok(map)
    }
}
