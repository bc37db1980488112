//! `krylov`: tables of Lanczos coefficients, wave functions, chain solutions,
//! Krylov complexity, moment inversions and κ-deformations as CSV.

mod args;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use commands::{CliError, ComplexityCmd, DeformCmd, FamilyCmd, InvertCmd, SolveCmd, VerifyCmd};

#[derive(Parser, Debug)]
#[command(name = "krylov", version, about = "Exactly solvable Lanczos sequences and the recursion method")]
struct Cli {
    /// CSV destination; a `<out>.manifest.json` sidecar is written next to it.
    /// Without it the table goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Coefficients, closed-form wave functions, measures and asymptotes.
    Family(FamilyCmd),
    /// Numerical integration of the chain.
    Solve(SolveCmd),
    /// Krylov complexity K^(δ)(t) and its growth prefactor.
    Complexity(ComplexityCmd),
    /// Exact moment inversion of a known autocorrelation.
    Invert(InvertCmd),
    /// κ-deformation and stationary-value recovery.
    Deform(DeformCmd),
    /// Identity and property checks across all modules.
    Verify(VerifyCmd),
}

fn init_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("KRYLOV_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("KRYLOV_THREADS must be a positive integer, got {v:?}")))?;
    // a second initialisation in the same process is harmless
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    init_threads()?;
    let (name, table) = match &cli.command {
        Command::Family(c) => ("family", commands::family(c)?),
        Command::Solve(c) => ("solve", commands::solve(c)?),
        Command::Complexity(c) => ("complexity", commands::complexity(c)?),
        Command::Invert(c) => ("invert", commands::invert(c)?),
        Command::Deform(c) => ("deform", commands::deform(c)?),
        Command::Verify(c) => ("verify", commands::verify(c)?),
    };
    output::emit(&table, cli.out.as_deref(), name, &cli.command)
        .map_err(|e| CliError::Usage(format!("cannot write output: {e}")))?;
    if name == "verify" {
        let failed = commands::failed_checks(&table);
        if !failed.is_empty() {
            return Err(CliError::Contract { invariant: failed.join(", "), detail: format!("{} check(s) failed", failed.len()) });
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
