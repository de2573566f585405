//! Frobenius characteristic polynomials of sampled curves against the
//! similitude coset of the predicted monodromy group.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};
use thiserror::Error;

use crate::curves::{
    analyze_batch, eigen_data, key_is_irreducible, split_unitary_predicate, CurveError, CurveRecord, Family,
};
use crate::groups::{coset_charpoly_histogram, CosetGroup, GroupError, HistogramMode};
use crate::histogram::{CharPolyHistogram, HistogramError};
use crate::residue::{classify_prime, PolyFp, ResidueError, Splitting};

#[derive(Debug, Error)]
pub enum StatsError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Histogram(#[from] HistogramError),
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error("ℓ = 3 is ramified in Z[ω]; trielliptic statistics need ℓ ≠ 3")]
    RamifiedEll,
    #[error("theoretical histogram is empty")]
    EmptyTheory,
}

/// Exact nonnegative fraction, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u128,
    pub den: u128,
}

impl Fraction {
    pub fn new(num: u128, den: u128) -> Self {
        if den == 0 {
            return Self { num: 0, den: 1 };
        }
        let (mut a, mut b) = (num, den);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Self { num: num / a, den: den / a }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

/// The coset histogrammed for a family: Sp_{2g}·σ_p for hyperelliptic
/// curves and the unitary coset for trielliptic ones.
pub fn predicted_group(family: &Family) -> CosetGroup {
    match family {
        Family::Hyper { g } => CosetGroup::Sp { g: *g as usize },
        Family::Tri { .. } => CosetGroup::Su { g: family.genus() as usize },
    }
}

fn check_ell(family: &Family, p: u32, ell: u32) -> Result<(), StatsError> {
    let modulus = classify_prime(ell)?;
    if p.is_multiple_of(ell) {
        return Err(CurveError::EllDividesP { ell, p }.into());
    }
    if matches!(family, Family::Tri { .. }) && modulus.splitting() == Splitting::Ramified {
        return Err(StatsError::RamifiedEll);
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateTally {
    pub passed: u64,
    pub total: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalRun {
    pub histogram: CharPolyHistogram,
    /// Irreducible reductions among the sampled curves.
    pub irreducible: u64,
    /// Split-unitary factorization check, for trielliptic families at split ℓ.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_predicate: Option<PredicateTally>,
}

/// Samples curves with seeds seed..seed+n−1 on the current rayon pool.
///
/// The returned records are ordered by index, so the result does not
/// depend on the number of workers.
pub fn sample_records(family: &Family, p: u32, ell: u32, n: u64, seed: u64) -> Result<Vec<CurveRecord>, StatsError> {
    check_ell(family, p, ell)?;
    family.validate(p)?;
    Ok(analyze_batch(family, p, n, seed, Some(ell))?)
}

pub fn empirical_run(family: &Family, p: u32, ell: u32, n: u64, seed: u64) -> Result<EmpiricalRun, StatsError> {
    let records = sample_records(family, p, ell, n, seed)?;
    let g = family.genus();
    let mut histogram = CharPolyHistogram::new(ell, 2 * g as usize);
    let mut irreducible = 0;
    for r in &records {
        histogram.add(r.key.clone().expect("ℓ given"), 1)?;
        if r.factor_shape.as_ref().is_some_and(|s| s.len() == 1) {
            irreducible += 1;
        }
    }
    let split_predicate = match (family, classify_prime(ell)?.splitting()) {
        (Family::Tri { .. }, Splitting::Split) => {
            let passed = records
                .par_iter()
                .map(|r| {
                    let lbar = PolyFp::new(ell, r.key.clone().expect("ℓ given"));
                    split_unitary_predicate(&lbar, p, g).map(|h| h.is_some() as u64)
                })
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .sum();
            Some(PredicateTally { passed, total: records.len() as u64 })
        }
        _ => None,
    };
    Ok(EmpiricalRun { histogram, irreducible, split_predicate })
}

pub fn empirical_histogram(family: &Family, p: u32, ell: u32, n: u64, seed: u64) -> Result<CharPolyHistogram, StatsError> {
    Ok(empirical_run(family, p, ell, n, seed)?.histogram)
}

/// Determinant classes of Frobenius on the χ-eigenspace: the class of the
/// reference curve `anchor_seed` times the cube roots of unity, as a + bω.
pub fn anchored_det_classes(family: &Family, p: u32, anchor_seed: u64) -> Result<Vec<(i64, i64)>, StatsError> {
    let curve = family.sample(p, anchor_seed)?;
    let det = eigen_data(&curve)?.det;
    let mut classes = Vec::new();
    let mut c = det;
    for _ in 0..3 {
        classes.push((c.a, c.b));
        c = c * crate::curves::EisensteinInt::OMEGA;
    }
    Ok(classes)
}

/// Histogram over the predicted coset with multiplier p mod ℓ.
///
/// Trielliptic families use the determinant classes anchored at the curve
/// with seed `anchor_seed`.
pub fn theoretical_histogram(
    family: &Family,
    p: u32,
    ell: u32,
    mode: HistogramMode,
    anchor_seed: u64,
) -> Result<CharPolyHistogram, StatsError> {
    check_ell(family, p, ell)?;
    family.validate(p)?;
    let group = predicted_group(family);
    let classes = match family {
        Family::Tri { .. } => Some(anchored_det_classes(family, p, anchor_seed)?),
        Family::Hyper { .. } => None,
    };
    Ok(coset_charpoly_histogram(group, ell, p % ell, classes.as_deref(), mode)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: u64,
    pub p_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub empirical_total: u64,
    pub theoretical_total: u64,
    pub total_variation: Fraction,
    pub chi_square: ChiSquare,
    pub coverage: Fraction,
    pub irreducible_fraction_empirical: Fraction,
    pub irreducible_fraction_theoretical: Fraction,
    pub support_violations: Vec<Vec<u32>>,
}

/// Keys observed empirically but absent from the theoretical support.
pub fn support_violation_scan(emp: &CharPolyHistogram, theo: &CharPolyHistogram) -> Vec<Vec<u32>> {
    emp.counts
        .iter()
        .filter(|(k, &c)| c > 0 && theo.get(k) == 0)
        .map(|(k, _)| k.clone())
        .collect()
}

fn irreducible_mass(h: &CharPolyHistogram) -> Result<u64, StatsError> {
    let mut total = 0;
    for (k, &c) in &h.counts {
        if key_is_irreducible(k, h.ell)? {
            total += c;
        }
    }
    Ok(total)
}

pub fn compare(emp: &CharPolyHistogram, theo: &CharPolyHistogram) -> Result<ComparisonReport, StatsError> {
    emp.same_space(theo)?;
    let (e_tot, t_tot) = (emp.total(), theo.total());
    if t_tot == 0 {
        return Err(StatsError::EmptyTheory);
    }
    let keys: BTreeMap<&Vec<u32>, ()> = emp.counts.keys().chain(theo.counts.keys()).map(|k| (k, ())).collect();
    // ½ Σ |e/E − t/T| = Σ |e·T − t·E| / 2ET.
    let tv_num: u128 = keys
        .keys()
        .map(|k| (emp.get(k) as u128 * t_tot as u128).abs_diff(theo.get(k) as u128 * e_tot as u128))
        .sum();
    let total_variation = if e_tot == 0 {
        Fraction::new(1, 1)
    } else {
        Fraction::new(tv_num, 2 * e_tot as u128 * t_tot as u128)
    };
    let mut statistic = 0.0;
    for (k, &t) in &theo.counts {
        let expected = e_tot as f64 * t as f64 / t_tot as f64;
        let diff = emp.get(k) as f64 - expected;
        statistic += diff * diff / expected;
    }
    let dof = theo.support_size() as u64 - 1;
    let p_value = match ChiSquared::new(dof as f64) {
        Ok(dist) if e_tot > 0 => dist.sf(statistic),
        _ => f64::NAN,
    };
    let observed = theo.counts.keys().filter(|k| emp.get(k) > 0).count();
    Ok(ComparisonReport {
        empirical_total: e_tot,
        theoretical_total: t_tot,
        total_variation,
        chi_square: ChiSquare { statistic, dof, p_value },
        coverage: Fraction::new(observed as u128, theo.support_size() as u128),
        irreducible_fraction_empirical: Fraction::new(irreducible_mass(emp)? as u128, e_tot as u128),
        irreducible_fraction_theoretical: Fraction::new(irreducible_mass(theo)? as u128, t_tot as u128),
        support_violations: support_violation_scan(emp, theo),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parallel::with_workers;

    fn hist(ell: u32, entries: &[(&[u32], u64)]) -> CharPolyHistogram {
        let mut h = CharPolyHistogram::new(ell, entries[0].0.len() - 1);
        for (k, c) in entries {
            h.add(k.to_vec(), *c).unwrap();
        }
        h
    }

    #[test]
    fn self_comparison() {
        let h = hist(3, &[(&[1, 0, 1], 3), (&[1, 1, 1], 1)]);
        let r = compare(&h, &h).unwrap();
        assert_eq!(r.total_variation, Fraction::new(0, 1));
        assert_eq!(r.coverage, Fraction::new(1, 1));
        assert!(r.support_violations.is_empty());
        // x² + 1 is irreducible mod 3, x² + x + 1 = (x − 1)² is not.
        assert_eq!(r.irreducible_fraction_empirical, Fraction::new(3, 4));
    }

    #[test]
    fn disjoint_histograms() {
        let a = hist(3, &[(&[1, 0, 1], 3)]);
        let b = hist(3, &[(&[1, 1, 1], 5)]);
        let r = compare(&a, &b).unwrap();
        assert_eq!(r.total_variation, Fraction::new(1, 1));
        assert_eq!(r.support_violations, vec![vec![1, 0, 1]]);
        assert!(compare(&a, &hist(5, &[(&[1, 0, 1], 1)])).is_err());
    }

    #[test]
    fn empty_empirical() {
        let fam = Family::Hyper { g: 1 };
        let e = empirical_histogram(&fam, 1009, 3, 0, 0).unwrap();
        assert_eq!(e.total(), 0);
        let t = theoretical_histogram(&fam, 1009, 3, HistogramMode::Enumerate, 0).unwrap();
        assert_eq!(t.total(), 24);
        assert!(support_violation_scan(&e, &t).is_empty());
    }

    #[test]
    fn worker_count_does_not_matter() {
        let fam = Family::Hyper { g: 2 };
        let run = |w| with_workers(w, || empirical_run(&fam, 31, 3, 40, 5).unwrap()).unwrap();
        assert_eq!(run(1), run(3));
    }

    #[test]
    fn corrupted_key_is_flagged() {
        let fam = Family::Hyper { g: 1 };
        let mut e = empirical_histogram(&fam, 1009, 5, 50, 0).unwrap();
        let t = theoretical_histogram(&fam, 1009, 5, HistogramMode::Enumerate, 0).unwrap();
        assert!(support_violation_scan(&e, &t).is_empty());
        // Constant term must be p mod 5 = 4; 1 is impossible.
        e.add(vec![1, 0, 1], 1).unwrap();
        assert_eq!(support_violation_scan(&e, &t), vec![vec![1, 0, 1]]);
    }

    #[test]
    fn trielliptic_split_keys_pass_predicate() {
        let fam = Family::Tri { d1: 3, d2: 0 };
        let run = empirical_run(&fam, 13, 7, 30, 0).unwrap();
        let tally = run.split_predicate.unwrap();
        assert_eq!(tally.passed, tally.total);
        let t = theoretical_histogram(&fam, 13, 7, HistogramMode::Enumerate, 0).unwrap();
        assert!(support_violation_scan(&run.histogram, &t).is_empty());
        for k in t.counts.keys() {
            let lbar = PolyFp::new(7, k.clone());
            assert!(split_unitary_predicate(&lbar, 13, 1).unwrap().is_some());
        }
        assert!(matches!(empirical_run(&fam, 13, 3, 1, 0), Err(StatsError::RamifiedEll)));
    }
}
