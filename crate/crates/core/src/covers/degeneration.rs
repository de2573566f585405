//! Δ₁,₁ degenerations: a genus-(g−2) cover glued at both ends to genus-1
//! covers.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{deform, enumerate_signatures, signature_of, ClassVector, CoverError, InertiaType, TriSignature};

/// Which construction produced a witness.  The trielliptic rows are tried in
/// the order listed here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableRow {
    Hyperelliptic,
    /// γ₁ = γ₃ = (1,1,1); γ₂ has signature (r−2, s).
    LowerR,
    /// γ₁ = γ₃ = (2,2,2); γ₂ has signature (r, s−2).
    LowerS,
    /// γ₁ = (1,1,1), γ₃ = (2,2,2); γ₂ has signature (r−1, s−1).
    Mixed,
}

impl TableRow {
    pub const TRIELLIPTIC: [TableRow; 3] = [TableRow::LowerR, TableRow::LowerS, TableRow::Mixed];

    pub fn condition(&self) -> &'static str {
        match self {
            TableRow::Hyperelliptic => "g ≥ 3",
            TableRow::LowerR => "r ≥ 2",
            TableRow::LowerS => "s ≥ 2",
            TableRow::Mixed => "r, s ≥ 1",
        }
    }

    fn ends(&self) -> (u8, u8) {
        match self {
            TableRow::Hyperelliptic => (1, 1),
            TableRow::LowerR => (1, 1),
            TableRow::LowerS => (2, 2),
            TableRow::Mixed => (1, 2),
        }
    }

    fn drop(&self) -> (u32, u32) {
        match self {
            TableRow::Hyperelliptic => (0, 0),
            TableRow::LowerR => (2, 0),
            TableRow::LowerS => (0, 2),
            TableRow::Mixed => (1, 1),
        }
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TableRow::Hyperelliptic => "hyperelliptic",
            TableRow::LowerR => "(r-2,s)",
            TableRow::LowerS => "(r,s-2)",
            TableRow::Mixed => "(r-1,s-1)",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Refusal {
    /// The degeneration statement covers only g ≥ `min_genus`.
    GenusHypothesis { d: u8, genus: u32, min_genus: u32 },
    NoApplicableRow { signature: TriSignature },
}

impl Refusal {
    /// Refusals that should never happen for inputs inside the hypotheses.
    pub fn in_hypothesis(&self) -> bool {
        matches!(self, Refusal::NoApplicableRow { .. })
    }
}

impl fmt::Display for Refusal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refusal::GenusHypothesis { d, genus, min_genus } => {
                write!(f, "genus hypothesis: d={d} needs g ≥ {min_genus}, got g={genus}")
            }
            Refusal::NoApplicableRow { signature } => write!(f, "no table row applies to {signature}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerationWitness {
    pub row: TableRow,
    pub gamma1: ClassVector,
    pub gamma2: ClassVector,
    pub gamma3: ClassVector,
    /// γ₁ glued to γ₂.
    pub left: ClassVector,
    /// γ₂ glued to γ₃.
    pub right: ClassVector,
    pub glued: ClassVector,
}

fn repeat(h: u8, n: usize) -> impl Iterator<Item = u8> {
    std::iter::repeat_n(h, n)
}

/// γ₂ with prescribed end entries around an interior of d₁ ones and d₂ twos.
fn middle_vector(first: u8, last: u8, d1: usize, d2: usize) -> Option<ClassVector> {
    let entries = std::iter::once(first)
        .chain(repeat(1, d1))
        .chain(repeat(2, d2))
        .chain(std::iter::once(last))
        .collect();
    ClassVector::new(3, entries).ok()
}

fn assemble(row: TableRow, gamma1: ClassVector, gamma2: ClassVector, gamma3: ClassVector) -> Result<DegenerationWitness, CoverError> {
    let left = deform(&gamma1, &gamma2)?;
    let right = deform(&gamma2, &gamma3)?;
    let glued = deform(&left, &gamma3)?;
    Ok(DegenerationWitness { row, gamma1, gamma2, gamma3, left, right, glued })
}

fn trielliptic_row(row: TableRow, sig: TriSignature, d1: usize, d2: usize) -> Option<DegenerationWitness> {
    let (dr, ds) = row.drop();
    if sig.r < dr || sig.s < ds {
        return None;
    }
    let inner = TriSignature { r: sig.r - dr, s: sig.s - ds };
    if !inner.is_valid() {
        return None;
    }
    let (a, b) = row.ends();
    let e1 = ClassVector::new(3, vec![a; 3]).ok()?;
    let e3 = ClassVector::new(3, vec![b; 3]).ok()?;
    // γ₁ contributes two copies of a, γ₃ two copies of b.
    let mut counts = [d1 as i64, d2 as i64];
    counts[a as usize - 1] -= 2;
    counts[b as usize - 1] -= 2;
    if counts.iter().any(|&c| c < 0) {
        return None;
    }
    // The rest of the glued vector is the interior of γ₂, whose ends are
    // the inverses of a and b.
    let middle = middle_vector(3 - a, 3 - b, counts[0] as usize, counts[1] as usize)?;
    assemble(row, e1, middle, e3).ok()
}

/// Finds γ₁, γ₂, γ₃ of genera 1, g−2, 1 whose double clutching has inertia
/// type `t`.
pub fn find_delta11(t: &InertiaType) -> Result<DegenerationWitness, CoverError> {
    let g = t.genus();
    match t.d() {
        2 => {
            if g < 3 {
                return Err(CoverError::Refused(Refusal::GenusHypothesis { d: 2, genus: g, min_genus: 3 }));
            }
            let end = ClassVector::new(2, vec![1; 4])?;
            let middle = ClassVector::new(2, vec![1; 2 * g as usize - 2])?;
            assemble(TableRow::Hyperelliptic, end.clone(), middle, end)
        }
        3 => {
            if g < 4 {
                return Err(CoverError::Refused(Refusal::GenusHypothesis { d: 3, genus: g, min_genus: 4 }));
            }
            let sig = signature_of(t)?;
            let (d1, d2) = t.tri_counts().expect("d = 3");
            TableRow::TRIELLIPTIC
                .iter()
                .find_map(|&row| trielliptic_row(row, sig, d1, d2))
                .ok_or(CoverError::Refused(Refusal::NoApplicableRow { signature: sig }))
        }
        d => Err(CoverError::UnsupportedDegree(d)),
    }
}

/// Re-checks a witness from scratch against the target inertia type.
pub fn validate_witness(w: &DegenerationWitness, t: &InertiaType) -> Result<(), String> {
    for (name, v) in [("gamma1", &w.gamma1), ("gamma3", &w.gamma3)] {
        if v.genus() != 1 {
            return Err(format!("{name} has genus {}", v.genus()));
        }
    }
    let d = t.d();
    if [&w.gamma1, &w.gamma2, &w.gamma3].iter().any(|v| v.d() != d) {
        return Err("components have the wrong d".into());
    }
    if w.gamma2.genus() + 2 != t.genus() {
        return Err(format!("gamma2 has genus {}, expected {}", w.gamma2.genus(), t.genus() - 2));
    }
    let inverse = |x: u8, y: u8| (x as u32 + y as u32).is_multiple_of(d as u32);
    if !inverse(w.gamma1.last(), w.gamma2.first()) {
        return Err("gamma1/gamma2 ends are not inverse".into());
    }
    if !inverse(w.gamma2.last(), w.gamma3.first()) {
        return Err("gamma2/gamma3 ends are not inverse".into());
    }
    let n1 = w.gamma1.len();
    let n2 = w.gamma2.len();
    let mut expected: Vec<u8> = w.gamma1.entries()[..n1 - 1].to_vec();
    expected.extend_from_slice(&w.gamma2.entries()[1..n2 - 1]);
    expected.extend_from_slice(&w.gamma3.entries()[1..]);
    if w.glued.entries() != expected.as_slice() {
        return Err("glued vector does not match the components".into());
    }
    let mut counts = vec![0usize; d as usize - 1];
    for &h in &expected {
        counts[h as usize - 1] += 1;
    }
    if counts != t.counts() {
        return Err(format!("glued inertia {counts:?} differs from target {:?}", t.counts()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SweepOutcome {
    Witness(DegenerationWitness),
    Refused(Refusal),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub genus: u32,
    pub inertia: InertiaType,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<TriSignature>,
    pub outcome: SweepOutcome,
}

impl SweepEntry {
    pub fn refused_in_hypothesis(&self) -> bool {
        matches!(&self.outcome, SweepOutcome::Refused(r) if r.in_hypothesis())
    }
}

/// Runs `find_delta11` over every inertia type with `g_min ≤ g ≤ g_max`.
/// Use g_min = 4 (d = 3) or 3 (d = 2) for the hypothesis range.
pub fn sweep_delta11(d: u8, g_min: u32, g_max: u32) -> Result<Vec<SweepEntry>, CoverError> {
    if g_max > 64 {
        return Err(CoverError::SweepTooLarge(g_max));
    }
    let mut out = Vec::new();
    for g in g_min.max(1)..=g_max {
        let types: Vec<(InertiaType, Option<TriSignature>)> = match d {
            2 => vec![(InertiaType::hyperelliptic(g)?, None)],
            3 => enumerate_signatures(g)
                .into_iter()
                .map(|sig| sig.inertia_type().map(|t| (t, Some(sig))))
                .collect::<Result<_, _>>()?,
            other => return Err(CoverError::UnsupportedDegree(other)),
        };
        for (inertia, signature) in types {
            let outcome = match find_delta11(&inertia) {
                Ok(w) => SweepOutcome::Witness(w),
                Err(CoverError::Refused(r)) => SweepOutcome::Refused(r),
                Err(e) => return Err(e),
            };
            out.push(SweepEntry { genus: g, inertia, signature, outcome });
        }
    }
    Ok(out)
}

/// Plain-text table: one line per (g, signature) with the chosen row and
/// the boundary components.
pub fn render_sweep_table(entries: &[SweepEntry]) -> String {
    let header = ["g", "signature", "gamma2 sig", "condition", "gamma1", "gamma3", "gamma2"];
    let mut rows: Vec<[String; 7]> = Vec::new();
    for e in entries {
        let sig = e.signature.map_or_else(|| "-".to_string(), |s| s.to_string());
        let row = match &e.outcome {
            SweepOutcome::Witness(w) => {
                let inner = signature_of(&w.gamma2.inertia_type()).map_or_else(|_| "-".to_string(), |s| s.to_string());
                [
                    e.genus.to_string(),
                    sig,
                    inner,
                    w.row.condition().to_string(),
                    w.gamma1.to_string(),
                    w.gamma3.to_string(),
                    w.gamma2.to_string(),
                ]
            }
            SweepOutcome::Refused(r) => {
                [e.genus.to_string(), sig, "-".into(), format!("refused: {r}"), "-".into(), "-".into(), "-".into()]
            }
        };
        rows.push(row);
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|i| rows.iter().map(|r| r[i].chars().count()).chain([header[i].len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[&str]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        padded.join(" | ").trim_end().to_string()
    };
    let mut out = String::new();
    let _ = writeln!(out, "{}", line(&header));
    let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
    let _ = writeln!(out, "{}", rule.join("-+-"));
    for r in &rows {
        let cells: Vec<&str> = r.iter().map(String::as_str).collect();
        let _ = writeln!(out, "{}", line(&cells));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(r: u32, s: u32) -> InertiaType {
        TriSignature { r, s }.inertia_type().unwrap()
    }

    #[test]
    fn hyperelliptic_genus_three() {
        let t = InertiaType::hyperelliptic(3).unwrap();
        let w = find_delta11(&t).unwrap();
        assert_eq!(w.gamma1.entries(), &[1, 1, 1, 1]);
        assert_eq!(w.gamma3.entries(), &[1, 1, 1, 1]);
        assert_eq!(w.gamma2.len(), 4);
        validate_witness(&w, &t).unwrap();
    }

    #[test]
    fn genus_four_rows() {
        assert_eq!(find_delta11(&tri(3, 1)).unwrap().row, TableRow::LowerR);
        assert_eq!(find_delta11(&tri(1, 3)).unwrap().row, TableRow::LowerS);
        // (2,2) would need γ₂ of signature (0,2), which is not a genus-2
        // signature, so the mixed row is used.
        let w = find_delta11(&tri(2, 2)).unwrap();
        assert_eq!(w.row, TableRow::Mixed);
        assert_eq!(signature_of(&w.gamma2.inertia_type()).unwrap(), TriSignature { r: 1, s: 1 });
    }

    #[test]
    fn genus_three_is_refused() {
        for sig in enumerate_signatures(3) {
            let err = find_delta11(&sig.inertia_type().unwrap()).unwrap_err();
            assert!(matches!(err, CoverError::Refused(Refusal::GenusHypothesis { genus: 3, .. })));
        }
    }

    #[test]
    fn witnesses_match_their_row() {
        for e in sweep_delta11(3, 4, 14).unwrap() {
            let SweepOutcome::Witness(w) = &e.outcome else { panic!("refused {e:?}") };
            validate_witness(w, &e.inertia).unwrap();
            let sig = e.signature.unwrap();
            let inner = signature_of(&w.gamma2.inertia_type()).unwrap();
            let (dr, ds) = w.row.drop();
            assert_eq!((inner.r + dr, inner.s + ds), (sig.r, sig.s));
        }
    }

    #[test]
    fn validation_catches_tampering() {
        let t = tri(3, 1);
        let mut w = find_delta11(&t).unwrap();
        w.glued = w.glued.canonicalize().negate();
        assert!(validate_witness(&w, &t).is_err());
    }

    #[test]
    fn table_has_a_line_per_entry() {
        let entries = sweep_delta11(3, 3, 5).unwrap();
        let text = render_sweep_table(&entries);
        assert_eq!(text.lines().count(), entries.len() + 2);
        assert!(text.contains("refused"));
        assert!(sweep_delta11(3, 4, 65).is_err());
    }
}
