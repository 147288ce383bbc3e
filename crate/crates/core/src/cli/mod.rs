//! Command-line front end for the `negref` binary.
//!
//! Subcommands `lhm`, `klein`, `map`, `coeffs` and `sweep` share the flags
//! `--config <path>`, `--set key=value` (repeatable) and `--out <prefix>`.
//! Exit codes: 0 success, 2 config error, 3 numerical-domain error, 4 I/O error.

pub mod config;
pub mod output;
mod scenario;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

pub use config::{Picture, RunConfig, Scenario, SweepParameter};
pub use scenario::{run_scenario, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config key `{key}`: {reason}")]
    Config { key: String, reason: String },

    #[error(transparent)]
    Numerical(#[from] crate::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Numerical(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "negref",
    version,
    about = "Negative refraction at a left-handed medium and at a strong Klein step"
)]
pub struct Cli {
    /// `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Override one key after the config file is read.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    pub set: Vec<String>,

    /// Path stem for emitted files.
    #[arg(long, global = true, value_name = "PREFIX")]
    pub out: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Command {
    /// Beam refracted by the left-handed medium: density grid and coefficients.
    Lhm,
    /// Particle beam at a strong Klein step: density grid and coefficients.
    Klein,
    /// Counter-dispersive (ω, n, E, V) table over the negative-index band.
    Map,
    /// T and R for a list of incidence angles.
    Coeffs,
    /// T, R and regime over a parameter range.
    Sweep,
}

impl Command {
    pub fn scenario(self) -> Scenario {
        match self {
            Command::Lhm => Scenario::Lhm,
            Command::Klein => Scenario::Klein,
            Command::Map => Scenario::Map,
            Command::Coeffs => Scenario::Coeffs,
            Command::Sweep => Scenario::Sweep,
        }
    }
}

/// Loads the configuration named by `cli` and runs the scenario.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let text = match &cli.config {
        Some(path) => Some(std::fs::read_to_string(path).map_err(CliError::io(path))?),
        None => None,
    };
    let cfg = RunConfig::load(
        cli.command.scenario(),
        text.as_deref(),
        &cli.set,
        cli.out.as_deref(),
    )?;
    run_scenario(&cfg)
}
