use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use monodromy::groups::HistogramMode;
use monodromy::histogram::CharPolyHistogram;
use monodromy::stats::{compare, empirical_run, theoretical_histogram, ComparisonReport};
use serde_json::{json, Value};

use crate::curves::FamilyArgs;
use crate::output::{invalid, CliError, Output};

#[derive(Debug, Subcommand)]
pub enum MonoCmd {
    /// Histogram of Frobenius characteristic polynomials mod ℓ over sampled curves.
    Empirical(EmpiricalArgs),
    /// Histogram over the predicted similitude coset with multiplier p mod ℓ.
    Theoretical(TheoreticalArgs),
    /// Compares an empirical histogram file with a theoretical one.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct EmpiricalArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    seed: u64,
}

#[derive(Debug, Args)]
pub struct TheoreticalArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    ell: u32,
    /// Sample this many coset elements instead of enumerating.
    #[arg(long, requires = "seed")]
    sample: Option<u64>,
    /// Seed for --sample.
    #[arg(long)]
    seed: Option<u64>,
    /// Seed of the curve fixing the determinant classes (trielliptic only).
    #[arg(long, required_if_eq("family", "tri"))]
    anchor_seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Output of `mono empirical`, a histogram JSON, or a histogram CSV.
    #[arg(long)]
    empirical: PathBuf,
    /// Output of `mono theoretical`, a histogram JSON, or a histogram CSV.
    #[arg(long)]
    theoretical: PathBuf,
    /// ℓ for CSV inputs.
    #[arg(long)]
    ell: Option<u32>,
}

fn histogram_text(h: &CharPolyHistogram) -> String {
    let mut out = format!("total {} over {} keys (ℓ = {}, degree {})\n", h.total(), h.support_size(), h.ell, h.degree);
    for (k, c) in &h.counts {
        let coeffs: Vec<String> = k.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}  {c}", coeffs.join(" "));
    }
    out
}

/// Reads a histogram from a command output, a bare histogram, or CSV.
fn load_histogram(path: &Path, ell: Option<u32>) -> Result<CharPolyHistogram, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    if let Ok(v) = serde_json::from_str::<Value>(&text) {
        let candidates = [&v["result"]["histogram"], &v["result"], &v["histogram"], &v];
        for c in candidates {
            if let Ok(h) = serde_json::from_value::<CharPolyHistogram>(c.clone()) {
                return Ok(h);
            }
        }
        return Err(CliError::Validation(format!("{}: no histogram found", path.display())));
    }
    let ell = ell.ok_or_else(|| CliError::Validation("--ell is required for CSV input".into()))?;
    CharPolyHistogram::from_csv(ell, &text).map_err(invalid)
}

fn report_text(r: &ComparisonReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "empirical total     {}", r.empirical_total);
    let _ = writeln!(out, "theoretical total   {}", r.theoretical_total);
    let _ = writeln!(out, "total variation     {:.6}", r.total_variation.value());
    let _ = writeln!(out, "chi-square          {:.3} (dof {}, p = {:.4})", r.chi_square.statistic, r.chi_square.dof, r.chi_square.p_value);
    let _ = writeln!(out, "coverage            {:.6}", r.coverage.value());
    let _ = writeln!(
        out,
        "irreducible         {:.6} empirical, {:.6} theoretical",
        r.irreducible_fraction_empirical.value(),
        r.irreducible_fraction_theoretical.value()
    );
    let _ = writeln!(out, "support violations  {}", r.support_violations.len());
    out
}

fn report_csv(emp: &CharPolyHistogram, theo: &CharPolyHistogram) -> String {
    let keys: std::collections::BTreeSet<&Vec<u32>> = emp.counts.keys().chain(theo.counts.keys()).collect();
    let mut out = String::from("key,empirical,theoretical\n");
    for k in keys {
        let coeffs: Vec<String> = k.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{},{},{}", coeffs.join(" "), emp.get(k), theo.get(k));
    }
    out
}

pub fn run(cmd: &MonoCmd) -> Result<Output, CliError> {
    match cmd {
        MonoCmd::Empirical(a) => {
            let family = a.family.family();
            let run = empirical_run(&family, a.p, a.ell, a.n, a.seed).map_err(invalid)?;
            let mut text = histogram_text(&run.histogram);
            let _ = writeln!(text, "irreducible {}/{}", run.irreducible, run.histogram.total());
            let mut failed = false;
            if let Some(t) = run.split_predicate {
                let _ = writeln!(text, "split-unitary factorization {}/{}", t.passed, t.total);
                failed = t.passed != t.total;
            }
            let params = json!({ "family": family, "p": a.p, "ell": a.ell, "n": a.n, "seed": a.seed });
            Ok(Output::new("mono empirical", params, &run, text)?
                .with_csv(run.histogram.to_csv())
                .fail_if(failed, "some reductions do not factor as h·h#"))
        }
        MonoCmd::Theoretical(a) => {
            let family = a.family.family();
            let mode = match (a.sample, a.seed) {
                (Some(n), Some(seed)) => HistogramMode::Sample { n, seed },
                _ => HistogramMode::Enumerate,
            };
            let h = theoretical_histogram(&family, a.p, a.ell, mode, a.anchor_seed.unwrap_or(0)).map_err(invalid)?;
            let params = json!({
                "family": family,
                "p": a.p,
                "ell": a.ell,
                "mode": mode,
                "anchor_seed": a.anchor_seed,
            });
            let text = histogram_text(&h);
            Ok(Output::new("mono theoretical", params, json!({ "histogram": &h }), text)?.with_csv(h.to_csv()))
        }
        MonoCmd::Compare(a) => {
            let emp = load_histogram(&a.empirical, a.ell)?;
            let theo = load_histogram(&a.theoretical, a.ell)?;
            let r = compare(&emp, &theo).map_err(invalid)?;
            let params = json!({ "empirical": a.empirical, "theoretical": a.theoretical });
            let violations = r.support_violations.len();
            Ok(Output::new("mono compare", params, &r, report_text(&r))?
                .with_csv(report_csv(&emp, &theo))
                .fail_if(violations > 0, format!("{violations} empirical keys lie outside the coset support")))
        }
    }
}
