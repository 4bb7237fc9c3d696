//! `renyi-bounds` command-line front end.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 malformed input or arguments,
//! 3 state validation failure, 4 numerical failure.

mod bounds;
mod failure;
mod hull;
mod output;
mod state;
mod sweep;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use renyi_bounds::hull::DEFAULT_GRID;
use renyi_bounds::qstate::Tolerances;
use renyi_bounds::CurveMethod;

use crate::failure::Failure;

#[derive(Parser, Debug)]
#[command(name = "renyi-bounds", version, about = "Bounds on the entanglement Renyi-alpha entropy")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Concurrence bracket and entropy bounds for a state file.
    Bounds(bounds::BoundsArgs),
    /// Extremal curves and their hulls on a concurrence grid, as CSV.
    Hull(hull::HullArgs),
    /// Bounds along a Werner or Example-2 parameter grid, as CSV.
    Sweep(sweep::SweepArgs),
    /// Runs the invariant suites; exits 1 if a mandatory check fails.
    Verify(verify::VerifyArgs),
    /// Writes a factory state in the JSON state-file format.
    State(state::StateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Enumeration,
    Paper,
}

impl From<MethodArg> for CurveMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Enumeration => CurveMethod::Enumeration,
            MethodArg::Paper => CurveMethod::Paper,
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
pub struct CurveOpts {
    /// `enumeration` scans all stationary patterns; `paper` uses the closed-form branch table.
    #[arg(long, value_enum, default_value_t = MethodArg::Enumeration)]
    pub method: MethodArg,
    /// Hull sampling grid size (at least 1000).
    #[arg(long, default_value_t = DEFAULT_GRID)]
    pub grid: usize,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TolOpts {
    #[arg(long, default_value_t = 1e-9)]
    pub tol_herm: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_psd: f64,
    #[arg(long, default_value_t = 1e-9)]
    pub tol_trace: f64,
}

impl TolOpts {
    pub fn tolerances(&self) -> Result<Tolerances, Failure> {
        for (name, v) in [
            ("--tol-herm", self.tol_herm),
            ("--tol-psd", self.tol_psd),
            ("--tol-trace", self.tol_trace),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Failure::Input(format!("{name} must be a nonnegative number, got {v}")));
            }
        }
        Ok(Tolerances {
            herm: self.tol_herm,
            psd: self.tol_psd,
            trace: self.tol_trace,
        })
    }
}

#[derive(Args, Debug, Clone)]
pub struct OutOpts {
    /// Also write the output to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Bounds(a) => bounds::run(a),
        Command::Hull(a) => hull::run(a),
        Command::Sweep(a) => sweep::run(a),
        Command::Verify(a) => verify::run(a),
        Command::State(a) => state::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
