use std::process::ExitCode;

use clap::{Args, ValueEnum};
use renyi_bounds::qstate::file::StateFile;
use renyi_bounds::states::{example2_state, random_density, random_pure, werner};

use crate::failure::Failure;
use crate::OutOpts;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Werner,
    Example2,
    RandomPure,
    RandomMixed,
}

#[derive(Args, Debug)]
pub struct StateArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Werner local dimension.
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    /// Werner parameter `Tr(ρF)`.
    #[arg(long, default_value_t = -0.5, allow_hyphen_values = true)]
    pub f: f64,
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long, default_value_t = 0.1)]
    pub x: f64,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Rank of a random mixed state; defaults to `m·n`.
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutOpts,
}

pub fn run(a: StateArgs) -> Result<ExitCode, Failure> {
    let file = match a.family {
        Family::Werner => StateFile::from_density(&werner(a.d, a.f)?),
        Family::Example2 => StateFile::from_density(&example2_state(a.a, a.x)?),
        Family::RandomPure => StateFile::from_pure(&random_pure(a.m, a.n, a.seed)?),
        Family::RandomMixed => StateFile::from_density(&random_density(
            a.m,
            a.n,
            a.rank.unwrap_or(a.m * a.n),
            a.seed,
        )?),
    };
    let json = file.to_json();
    crate::output::stdout(&format!("{json}\n"))?;
    if let Some(p) = &a.out.out {
        std::fs::write(p, format!("{json}\n"))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", p.display())))?;
    }
    Ok(ExitCode::SUCCESS)
}
