//! `skewrandic`: spectra, energies, polynomials, bounds and theorem sweeps
//! for oriented graphs from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use skew_randic::families::Family;
use skew_randic::orientations::TheoremId;
use skew_randic::DEFAULT_TOLERANCE;

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "skewrandic", version, about = "Skew Randić spectra and energies of oriented graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Absolute tolerance for numeric comparisons.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE, value_parser = positive_float)]
    tolerance: f64,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// Sweep every orientation even where one per switching class would do.
    #[arg(long, global = true)]
    no_switch_reduction: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Skew Randić and Randić spectra.
    Spectrum(Inputs),
    /// Energies, R_-1 and |det R_s|.
    Energy(Inputs),
    /// Exact characteristic polynomial coefficients.
    Charpoly(Inputs),
    /// Energy and R_-1 bounds with tightness.
    Bounds(Inputs),
    /// Spectral relation, parity audit and switching to the canonical orientation.
    Relation(Inputs),
    /// Exhaustively check theorems over a graph family.
    Verify(VerifyArgs),
    /// Per-graph energy ranges over all orientations of a family.
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct Inputs {
    /// Oriented graph file (`-` for stdin); repeatable.
    #[arg(long = "input", required = true)]
    paths: Vec<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Theorem to check.
    #[arg(long, value_parser = parse_theorem, required_unless_present = "all", conflicts_with = "all")]
    theorem: Option<TheoremId>,
    /// Check every theorem on its default family.
    #[arg(long)]
    all: bool,
    /// Graph family; defaults to the theorem's own.
    #[arg(long, value_parser = parse_family)]
    family: Option<Family>,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long, default_value_t = 1)]
    n_min: usize,
    #[arg(long)]
    n_max: usize,
}

fn positive_float(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("'{s}' is not a positive number")),
    }
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|_| {
        let names: Vec<&str> = TheoremId::ALL.iter().map(|t| t.name()).collect();
        format!("unknown theorem '{s}' (expected one of: {})", names.join(", "))
    })
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: skew_randic::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match commands::run(cli.command, &cli.common) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
