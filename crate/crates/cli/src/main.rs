mod covers;
mod curves;
mod groups;
mod mono;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::output::{write_output, CliError, Format, Output};

/// Monodromy of cyclic covers of the line: classical groups mod ℓ,
/// degeneration witnesses, and Frobenius statistics of curves over F_p.
#[derive(Debug, Parser)]
#[command(name = "monodromy", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; results do not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Output file; defaults to $MONODROMY_OUT_DIR/<command>.<ext>, else stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classical groups over Z/ℓ.
    #[command(subcommand)]
    Groups(groups::GroupsCmd),
    /// Inertia types, signatures and Δ₁,₁ degenerations.
    #[command(subcommand)]
    Covers(covers::CoversCmd),
    /// Curves over F_p and their L-polynomials.
    #[command(subcommand)]
    Curves(curves::CurvesCmd),
    /// Empirical and predicted characteristic polynomial statistics.
    #[command(subcommand)]
    Mono(mono::MonoCmd),
}

fn dispatch(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Groups(c) => groups::run(c),
        Command::Covers(c) => covers::run(c),
        Command::Curves(c) => curves::run(c),
        Command::Mono(c) => mono::run(c),
    }
}

fn run(cli: &Cli) -> Result<Option<String>, CliError> {
    let start = Instant::now();
    let output = monodromy::parallel::with_workers(cli.workers, || dispatch(&cli.command))
        .map_err(|e| CliError::Io(e.to_string()))??;
    let rendered = output.render(cli.format, start.elapsed())?;
    let dest = output.destination(cli.format, cli.out.as_deref());
    write_output(&rendered, dest.as_deref())?;
    Ok(output.failure)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(failure)) => {
            eprintln!("check failed: {failure}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("{e}");
            match e {
                CliError::Validation(_) => ExitCode::from(2),
                CliError::Io(_) => ExitCode::from(1),
            }
        }
    }
}
