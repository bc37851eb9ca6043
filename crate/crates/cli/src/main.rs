//! `mlharm`: config-driven batch front end for the harmonic-map toolkit.
//!
//! Exit codes: 0 success or member, 1 violator or failed verification,
//! 2 usage or configuration error, 3 numerical failure.

mod commands;
mod config;
mod format;
mod plan;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mlharm::suite::DEFAULT_SEED;

use commands::{Globals, Outcome};
use config::Config;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Numerical(mlharm::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl From<mlharm::Error> for CliError {
    fn from(e: mlharm::Error) -> Self {
        use mlharm::Error::*;
        match e {
            InvalidParams(_) | Precondition(_) | CoefficientOutOfRange { .. } => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Numerical(e),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mlharm",
    version,
    about = "Harmonic maps defined by a Mittag-Leffler type operator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Flat `key = value` configuration file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Seed for randomized suites.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,

    /// Comma-separated grid radii, overriding `grid.radii`.
    #[arg(long = "grid-radii", global = true, value_name = "CSV")]
    grid_radii: Option<String>,

    /// Angles per radius, overriding `grid.angles`.
    #[arg(long = "grid-angles", global = true, value_name = "N")]
    grid_angles: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the six-parameter Mittag-Leffler function at one point.
    MlEval(KernelArgs),
    /// Tabulate the operator weights and the combined family weights.
    Weights,
    /// Run the coefficient membership test on the configured map.
    Membership,
    /// Build an extremal map, extreme point or combination and test it.
    Extremal,
    /// Tabulate the distortion bounds over the grid radii.
    Distortion,
    /// Convolve two sign-patterned maps and test closure.
    Convolve,
    /// Sample the quotient, Jacobian or distortion checks on a grid.
    Verify,
    /// Export the image of the grid under the configured map as CSV.
    Render,
}

/// Kernel parameters accept complex literals such as `1`, `0.5-2i` or `3i`.
#[derive(Debug, Args)]
struct KernelArgs {
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    /// Evaluation point.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long = "max-terms")]
    max_terms: Option<String>,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(r) = cli.grid_radii {
        cfg.set("grid.radii", r);
    }
    if let Some(a) = cli.grid_angles {
        cfg.set("grid.angles", a);
    }
    let globals = Globals { seed: cli.seed.unwrap_or(DEFAULT_SEED) };
    match cli.command {
        Command::MlEval(k) => {
            let flags = [
                ("alpha", k.alpha),
                ("beta", k.beta),
                ("gamma", k.gamma),
                ("delta", k.delta),
                ("q", k.q),
                ("p", k.p),
                ("z", k.z),
                ("max_terms", k.max_terms),
            ];
            for (key, value) in flags {
                if let Some(v) = value {
                    cfg.set(key, v);
                }
            }
            commands::ml_eval_cmd(&cfg)
        }
        Command::Weights => commands::weights_cmd(&cfg),
        Command::Membership => commands::membership_cmd(&cfg),
        Command::Extremal => commands::extremal_cmd(&cfg),
        Command::Distortion => commands::distortion_cmd(&cfg),
        Command::Convolve => commands::convolve_cmd(&cfg),
        Command::Verify => commands::verify_cmd(&cfg, &globals),
        Command::Render => commands::render_cmd(&cfg),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = run(cli).and_then(|outcome| {
        emit(&outcome.text, out.as_ref())?;
        Ok(outcome.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
