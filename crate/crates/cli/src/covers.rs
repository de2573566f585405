use std::fmt::Write as _;

use clap::{Args, Subcommand};
use monodromy::covers::{
    enumerate_signatures, find_delta11, render_sweep_table, signature_of, sweep_delta11, validate_witness, CoverError,
    InertiaType, SweepOutcome,
};
use serde_json::json;

use crate::output::{invalid, CliError, Output};

#[derive(Debug, Subcommand)]
pub enum CoversCmd {
    /// Trielliptic signatures (r,s) of genus g with their inertia types.
    Signatures(SignatureArgs),
    /// A Δ₁,₁ degeneration witness for one inertia type.
    Degenerate(DegenerateArgs),
    /// Degeneration witnesses for every inertia type in a genus range.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct SignatureArgs {
    #[arg(long)]
    g: u32,
}

#[derive(Debug, Args)]
pub struct DegenerateArgs {
    /// 2 (hyperelliptic) or 3 (trielliptic).
    #[arg(long)]
    d: u8,
    /// Genus, for d = 2.
    #[arg(long, required_if_eq("d", "2"))]
    g: Option<u32>,
    /// Number of points with inertia 1, for d = 3.
    #[arg(long, required_if_eq("d", "3"))]
    d1: Option<usize>,
    /// Number of points with inertia 2, for d = 3.
    #[arg(long, required_if_eq("d", "3"))]
    d2: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    d: u8,
    /// Smallest genus; defaults to the start of the hypothesis range.
    #[arg(long)]
    g_min: Option<u32>,
    #[arg(long)]
    g_max: u32,
}

pub fn run(cmd: &CoversCmd) -> Result<Output, CliError> {
    match cmd {
        CoversCmd::Signatures(a) => {
            if a.g == 0 {
                return Err(CliError::Validation("genus must be at least 1".into()));
            }
            let rows = enumerate_signatures(a.g)
                .into_iter()
                .map(|s| {
                    let t = s.inertia_type().map_err(invalid)?;
                    let (d1, d2) = t.tri_counts().expect("trielliptic");
                    Ok((s, d1, d2))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            let mut text = String::new();
            let mut csv = String::from("r,s,d1,d2\n");
            let mut result = Vec::new();
            for (s, d1, d2) in &rows {
                let _ = writeln!(text, "{s}  d1={d1} d2={d2}");
                let _ = writeln!(csv, "{},{},{d1},{d2}", s.r, s.s);
                result.push(json!({ "r": s.r, "s": s.s, "d1": d1, "d2": d2 }));
            }
            Ok(Output::new("covers signatures", json!({ "g": a.g }), result, text)?.with_csv(csv))
        }
        CoversCmd::Degenerate(a) => {
            let t = match a.d {
                2 => InertiaType::hyperelliptic(a.g.expect("required by clap")),
                3 => InertiaType::trielliptic(a.d1.expect("required"), a.d2.expect("required")),
                d => Err(CoverError::UnsupportedDegree(d)),
            }
            .map_err(invalid)?;
            let params = json!({ "d": a.d, "inertia": t });
            match find_delta11(&t) {
                Ok(w) => {
                    let check = validate_witness(&w, &t);
                    let mut text = String::new();
                    if let Ok(sig) = signature_of(&t) {
                        let _ = writeln!(text, "signature {sig}");
                    }
                    let _ = writeln!(text, "row     {}", w.row);
                    for (name, v) in [
                        ("gamma1", &w.gamma1),
                        ("gamma2", &w.gamma2),
                        ("gamma3", &w.gamma3),
                        ("left", &w.left),
                        ("right", &w.right),
                        ("glued", &w.glued),
                    ] {
                        let _ = writeln!(text, "{name:<7} {v}");
                    }
                    let failed = check.is_err();
                    Ok(Output::new("covers degenerate", params, &w, text)?
                        .fail_if(failed, format!("witness failed validation: {}", check.err().unwrap_or_default())))
                }
                Err(CoverError::Refused(r)) if r.in_hypothesis() => {
                    let text = format!("refused: {r}\n");
                    Ok(Output::new("covers degenerate", params, json!({ "refused": r }), text)?
                        .fail_if(true, "no table row applies inside the hypothesis range"))
                }
                Err(e) => Err(invalid(e)),
            }
        }
        CoversCmd::Sweep(a) => {
            let g_min = a.g_min.unwrap_or(if a.d == 3 { 4 } else { 3 });
            let entries = sweep_delta11(a.d, g_min, a.g_max).map_err(invalid)?;
            let mut bad = 0;
            for e in &entries {
                match &e.outcome {
                    SweepOutcome::Witness(w) if validate_witness(w, &e.inertia).is_err() => bad += 1,
                    _ if e.refused_in_hypothesis() => bad += 1,
                    _ => {}
                }
            }
            let mut csv = String::from("g,r,s,row,gamma1,gamma2,gamma3,glued\n");
            for e in &entries {
                let (r, s) = e.signature.map_or((String::new(), String::new()), |s| (s.r.to_string(), s.s.to_string()));
                match &e.outcome {
                    SweepOutcome::Witness(w) => {
                        let _ = writeln!(
                            csv,
                            "{},{r},{s},{},\"{}\",\"{}\",\"{}\",\"{}\"",
                            e.genus, w.row, w.gamma1, w.gamma2, w.gamma3, w.glued
                        );
                    }
                    SweepOutcome::Refused(_) => {
                        let _ = writeln!(csv, "{},{r},{s},refused,,,,", e.genus);
                    }
                }
            }
            let params = json!({ "d": a.d, "g_min": g_min, "g_max": a.g_max });
            Ok(Output::new("covers sweep", params, &entries, render_sweep_table(&entries))?
                .with_csv(csv)
                .fail_if(bad > 0, format!("{bad} entries lack a valid witness")))
        }
    }
}
