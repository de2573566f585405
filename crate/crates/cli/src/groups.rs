use clap::{Args, Subcommand};
use monodromy::groups::{bruhat_selftest, order_report, verify_generation, GroupKind};
use serde_json::json;

use crate::output::{invalid, CliError, Output};

#[derive(Debug, Subcommand)]
pub enum GroupsCmd {
    /// BSGS order of SL_n, Sp_2g or SU_n over Z/ℓ against the classical formula.
    Order(OrderArgs),
    /// Whether G(V₁⊕V₂) and G(V₂⊕V₃) generate G(V₁⊕V₂⊕V₃).
    VerifyGeneration(GenerationArgs),
    /// Bruhat decomposition round trip on seeded random SL_n(Z/ℓ) elements.
    BruhatSelftest(BruhatArgs),
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: GroupKind,
    /// n for SL and SU, g for Sp.
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    ell: u32,
}

#[derive(Debug, Args)]
pub struct GenerationArgs {
    #[arg(long, value_parser = parse_kind)]
    kind: GroupKind,
    /// Ranks of V₁, V₂, V₃, e.g. 1,2,1.
    #[arg(long, value_parser = parse_dims)]
    dims: [usize; 3],
    #[arg(long)]
    ell: u32,
}

#[derive(Debug, Args)]
pub struct BruhatArgs {
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 5)]
    ell: u32,
    #[arg(long, default_value_t = 1000)]
    count: u64,
    #[arg(long)]
    seed: u64,
}

fn parse_kind(s: &str) -> Result<GroupKind, String> {
    s.parse().map_err(|e: monodromy::groups::GroupError| e.to_string())
}

fn kind_name(kind: GroupKind) -> &'static str {
    match kind {
        GroupKind::Sl => "SL",
        GroupKind::Sp => "Sp",
        GroupKind::Su => "SU",
    }
}

pub fn run(cmd: &GroupsCmd) -> Result<Output, CliError> {
    match cmd {
        GroupsCmd::Order(a) => {
            let r = order_report(a.kind, a.rank, a.ell).map_err(invalid)?;
            let text = format!(
                "{}({}, Z/{}): bsgs {} formula {} equal {}\n",
                kind_name(a.kind),
                a.rank,
                a.ell,
                r.order_bsgs,
                r.order_formula,
                r.equal
            );
            let csv = format!(
                "kind,rank,ell,order_bsgs,order_formula,equal\n{},{},{},{},{},{}\n",
                kind_name(a.kind),
                a.rank,
                a.ell,
                r.order_bsgs,
                r.order_formula,
                r.equal
            );
            let params = json!({ "kind": a.kind, "rank": a.rank, "ell": a.ell });
            let equal = r.equal;
            Ok(Output::new("groups order", params, &r, text)?
                .with_csv(csv)
                .fail_if(!equal, "BSGS order differs from the formula"))
        }
        GroupsCmd::VerifyGeneration(a) => {
            let dims = a.dims;
            let r = verify_generation(a.kind, dims, a.ell).map_err(invalid)?;
            let text = format!(
                "{} on ({},{},{}) over Z/{}: generated {} target {} equal {}\n",
                kind_name(a.kind),
                dims[0],
                dims[1],
                dims[2],
                a.ell,
                r.order_generated,
                r.order_target,
                r.equal
            );
            let csv = format!(
                "kind,d1,d2,d3,ell,order_generated,order_target,equal\n{},{},{},{},{},{},{},{}\n",
                kind_name(a.kind),
                dims[0],
                dims[1],
                dims[2],
                a.ell,
                r.order_generated,
                r.order_target,
                r.equal
            );
            let params = json!({ "kind": a.kind, "dims": dims, "ell": a.ell });
            let equal = r.equal;
            Ok(Output::new("groups verify-generation", params, &r, text)?
                .with_csv(csv)
                .fail_if(!equal, "the two blocks do not generate the whole group"))
        }
        GroupsCmd::BruhatSelftest(a) => {
            let r = bruhat_selftest(a.n, a.ell, a.count, a.seed).map_err(invalid)?;
            let text = format!(
                "SL_{}(Z/{}), {} elements from seed {}: {} failures\n",
                a.n, a.ell, a.count, a.seed, r.failures
            );
            let csv = format!("n,ell,seed,count,failures\n{},{},{},{},{}\n", a.n, a.ell, a.seed, a.count, r.failures);
            let params = json!({ "n": a.n, "ell": a.ell, "count": a.count, "seed": a.seed });
            let failures = r.failures;
            Ok(Output::new("groups bruhat-selftest", params, &r, text)?
                .with_csv(csv)
                .fail_if(failures > 0, format!("{failures} elements failed to recompose")))
        }
    }
}

fn parse_dims(s: &str) -> Result<[usize; 3], String> {
    let parts = s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>()?;
    parts.try_into().map_err(|_| "expected three comma-separated ranks".to_string())
}
