use std::fmt::Write as _;

use clap::{Args, Subcommand, ValueEnum};
use monodromy::curves::{
    analyze_batch, count_points_up_to, eigen_data, lpoly_from_counts, reduce_and_factor, split_unitary_predicate,
    Curve, CurveRecord, Family, HyperCurve, TriCurve,
};
use monodromy::residue::{classify_prime, Splitting};
use serde_json::json;

use crate::output::{invalid, CliError, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Hyper,
    Tri,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Genus of a hyperelliptic family.
    #[arg(long, required_if_eq("family", "hyper"))]
    g: Option<u32>,
    /// Points with inertia 1 in a trielliptic family.
    #[arg(long, required_if_eq("family", "tri"))]
    d1: Option<usize>,
    /// Points with inertia 2 in a trielliptic family.
    #[arg(long, required_if_eq("family", "tri"))]
    d2: Option<usize>,
}

impl FamilyArgs {
    pub fn family(&self) -> Family {
        match self.family {
            FamilyKind::Hyper => Family::Hyper { g: self.g.expect("required by clap") },
            FamilyKind::Tri => Family::Tri { d1: self.d1.expect("required"), d2: self.d2.expect("required") },
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum CurvesCmd {
    /// Samples curves with seeds seed..seed+n−1 and emits one record per curve.
    Sample(SampleArgs),
    /// L-polynomial of one curve, given by seed or by its branch points.
    Lpoly(LpolyArgs),
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    seed: u64,
    /// Also reduce each L-polynomial mod ℓ.
    #[arg(long)]
    ell: Option<u32>,
}

#[derive(Debug, Args)]
pub struct LpolyArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    ell: Option<u32>,
    /// Branch points of y² = ∏(x − c).
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["a", "b", "seed"])]
    branch: Option<Vec<u32>>,
    /// Simple branch points of y³ = ∏(x − a)∏(x − b)².
    #[arg(long, value_delimiter = ',', conflicts_with = "seed")]
    a: Option<Vec<u32>>,
    /// Double branch points of y³ = ∏(x − a)∏(x − b)².
    #[arg(long, value_delimiter = ',', conflicts_with = "seed")]
    b: Option<Vec<u32>>,
    /// Sample the curve from a family instead.
    #[arg(long, requires = "family")]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
    #[arg(long)]
    g: Option<u32>,
    #[arg(long)]
    d1: Option<usize>,
    #[arg(long)]
    d2: Option<usize>,
}

fn record_csv(records: &[CurveRecord]) -> String {
    let mut out = String::from("index,seed,counts,lpoly,key,factor_shape\n");
    for r in records {
        let join = |v: &[String]| v.join(" ");
        let counts: Vec<String> = r.counts.iter().map(|c| c.to_string()).collect();
        let lpoly: Vec<String> = r.lpoly.iter().map(|c| c.to_string()).collect();
        let key: Vec<String> = r.key.iter().flatten().map(|c| c.to_string()).collect();
        let shape: Vec<String> = r.factor_shape.iter().flatten().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "{},{},{},{},{},{}", r.index, r.seed, join(&counts), join(&lpoly), join(&key), join(&shape));
    }
    out
}

pub fn run(cmd: &CurvesCmd) -> Result<Output, CliError> {
    match cmd {
        CurvesCmd::Sample(a) => {
            let family = a.family.family();
            family.validate(a.p).map_err(invalid)?;
            let records = analyze_batch(&family, a.p, a.n, a.seed, a.ell).map_err(invalid)?;
            let mut text = String::new();
            for r in &records {
                let _ = writeln!(text, "#{} seed {}: L = {:?}", r.index, r.seed, r.lpoly);
            }
            let lines = records.iter().map(|r| serde_json::to_value(r).map_err(invalid)).collect::<Result<_, _>>()?;
            let params = json!({ "family": family, "p": a.p, "n": a.n, "seed": a.seed, "ell": a.ell });
            Ok(Output::new("curves sample", params, &records, text)?
                .with_csv(record_csv(&records))
                .with_lines(lines))
        }
        CurvesCmd::Lpoly(a) => lpoly(a),
    }
}

fn lpoly(a: &LpolyArgs) -> Result<Output, CliError> {
    let curve = match (&a.branch, &a.a, a.seed, a.family) {
        (Some(branch), _, _, _) => Curve::Hyper(HyperCurve::new(a.p, branch.clone()).map_err(invalid)?),
        (None, Some(pts), _, _) => {
            Curve::Tri(TriCurve::new(a.p, pts.clone(), a.b.clone().unwrap_or_default()).map_err(invalid)?)
        }
        (None, None, Some(seed), Some(kind)) => {
            let fam = FamilyArgs { family: kind, g: a.g, d1: a.d1, d2: a.d2 };
            let ok = match kind {
                FamilyKind::Hyper => a.g.is_some(),
                FamilyKind::Tri => a.d1.is_some() && a.d2.is_some(),
            };
            if !ok {
                return Err(CliError::Validation("family parameters missing (--g or --d1/--d2)".into()));
            }
            fam.family().sample(a.p, seed).map_err(invalid)?
        }
        _ => return Err(CliError::Validation("give --branch, --a/--b, or --seed with a family".into())),
    };
    let g = curve.genus();
    let counts = count_points_up_to(&curve, g).map_err(invalid)?;
    let l = lpoly_from_counts(&counts, g, a.p).map_err(invalid)?;
    let deviation = l.weil_deviation().map_err(invalid)?;
    let mut result = json!({
        "curve": curve,
        "genus": g,
        "counts": counts,
        "lpoly": l.coeffs,
        "functional_equation": l.satisfies_functional_equation(),
        "weil_deviation": deviation,
    });
    let mut text = format!("genus {g}\ncounts {counts:?}\nL {:?}\n", l.coeffs);
    let mut failure = None;
    if let Curve::Tri(_) = &curve {
        let e = eigen_data(&curve).map_err(invalid)?;
        let _ = writeln!(text, "det on chi-part {}+{}w", e.det.a, e.det.b);
        result["eigen"] = serde_json::to_value(&e).map_err(invalid)?;
    }
    if let Some(ell) = a.ell {
        let (f, irreducible) = reduce_and_factor(&l, ell).map_err(invalid)?;
        let key = l.key(ell).map_err(invalid)?;
        let _ = writeln!(text, "mod {ell}: {} (shape {:?})", l.reduce(ell).map_err(invalid)?, f.shape());
        result["ell"] = json!(ell);
        result["key"] = json!(key);
        result["factor_shape"] = json!(f.shape());
        result["irreducible"] = json!(irreducible);
        let split = classify_prime(ell).map_err(invalid)?.splitting() == Splitting::Split;
        if matches!(curve, Curve::Tri(_)) && split {
            let h = split_unitary_predicate(&l.reduce(ell).map_err(invalid)?, a.p, g).map_err(invalid)?;
            let _ = writeln!(text, "split factor h: {}", h.as_ref().map_or("none".to_string(), |h| h.to_string()));
            result["split_factor"] = json!(h.as_ref().map(|h| h.coeffs().to_vec()));
            if h.is_none() {
                failure = Some("reduction does not factor as h·h#".to_string());
            }
        }
    }
    let params = json!({ "p": a.p, "ell": a.ell, "seed": a.seed });
    Ok(Output::new("curves lpoly", params, result, text)?.fail_if(failure.is_some(), failure.unwrap_or_default()))
}
