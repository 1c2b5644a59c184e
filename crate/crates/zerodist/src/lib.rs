//! File formats, reports and the `zerodist` command line on top of `zerodist-core`.

pub mod commands;
pub mod config;
pub mod error;
pub mod family;
pub mod output;

use clap::{Parser, Subcommand};

use crate::config::{Flags, RunConfig};
use crate::error::Result;

#[derive(Debug, Parser)]
#[command(name = "zerodist", version, about = "Zeros, limit measures and ratio asymptotics of four-term recurrences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeros of P_{n,N} with a validation report.
    Zeros(Flags),
    /// Density and CDF table of a limit measure.
    Density(Flags),
    /// Kolmogorov–Smirnov distances between zeros and their limit.
    Ks(Flags),
    /// P_n/P_{n+1} against the scaled branch function.
    Ratio(Flags),
    /// The branch function against its cubic root-tracking twin.
    PhiCheck(Flags),
    /// Q_n(0) and total nonnegativity of the banded Toeplitz matrices.
    Toeplitz(Flags),
    /// The full set of gated numeric checks.
    Verify(Flags),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Zeros(_) => "zeros",
            Command::Density(_) => "density",
            Command::Ks(_) => "ks",
            Command::Ratio(_) => "ratio",
            Command::PhiCheck(_) => "phi-check",
            Command::Toeplitz(_) => "toeplitz",
            Command::Verify(_) => "verify",
        }
    }

    fn flags(&self) -> &Flags {
        match self {
            Command::Zeros(f)
            | Command::Density(f)
            | Command::Ks(f)
            | Command::Ratio(f)
            | Command::PhiCheck(f)
            | Command::Toeplitz(f)
            | Command::Verify(f) => f,
        }
    }
}

pub fn run(cli: &Cli) -> Result<()> {
    let cfg = RunConfig::resolve(cli.command.name(), cli.command.flags())?;
    match cli.command {
        Command::Zeros(_) => commands::cmd_zeros(&cfg),
        Command::Density(_) => commands::cmd_density(&cfg),
        Command::Ks(_) => commands::cmd_ks(&cfg),
        Command::Ratio(_) => commands::cmd_ratio(&cfg),
        Command::PhiCheck(_) => commands::cmd_phi_check(&cfg),
        Command::Toeplitz(_) => commands::cmd_toeplitz(&cfg),
        Command::Verify(_) => commands::cmd_verify(&cfg),
    }
}
