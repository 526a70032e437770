use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use irrev_core::photonic::{DEFAULT_RESAMPLES, DEFAULT_SHOTS};

use crate::commands::{cmd_asymptotic, cmd_experiment, cmd_sweep, default_temperatures};
use crate::config::{parse_list, Grid, InitialState, SweepConfig, DEFAULT_TEMPERATURE};
use crate::verify::{cmd_verify, Suite};
use crate::{CliError, EXIT_VERIFY_FAILED};

#[derive(Debug, Parser)]
#[command(
    name = "irrev",
    version,
    about = "Entropy production and geometric bounds for a thermalizing qubit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Noise-free bounds along a GAD trajectory.
    Sweep(TrajectoryArgs),
    /// Asymptotic entropy production and lower bounds over temperature.
    Asymptotic(AsymptoticArgs),
    /// Simulated photonic experiment with tomography noise and error bars.
    Experiment(TrajectoryArgs),
    /// Invariant suites; exits 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct TrajectoryArgs {
    /// Bath temperature (units of the level splitting).
    #[arg(long, default_value_t = DEFAULT_TEMPERATURE)]
    pub temperature: f64,
    /// Initial state: H, V, D, or a Bloch triple x,y,z.
    #[arg(long, default_value = "D")]
    pub state: InitialState,
    /// Comma-separated dimensionless times.
    #[arg(long, conflicts_with = "theta_grid")]
    pub time_grid: Option<String>,
    /// Comma-separated half-wave-plate angles in radians.
    #[arg(long)]
    pub theta_grid: Option<String>,
    /// Shots per tomography basis (experiment only).
    #[arg(long, default_value_t = DEFAULT_SHOTS)]
    pub shots: u64,
    /// Bootstrap resamples per row (experiment only).
    #[arg(long, default_value_t = DEFAULT_RESAMPLES)]
    pub resamples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl TrajectoryArgs {
    pub fn config(&self) -> Result<SweepConfig, CliError> {
        let grid = match (&self.time_grid, &self.theta_grid) {
            (Some(t), _) => Grid::Times(parse_list(t)?),
            (_, Some(t)) => Grid::Thetas(parse_list(t)?),
            _ => Grid::Default,
        };
        Ok(SweepConfig {
            temperature: self.temperature,
            initial_state: self.state,
            grid,
            shots: Some(self.shots),
            resamples: self.resamples,
            seed: self.seed,
        })
    }
}

#[derive(Debug, Args)]
pub struct AsymptoticArgs {
    /// Comma-separated temperatures; 30 points on [0.05, 3] by default.
    #[arg(long, value_delimiter = ',')]
    pub temperature: Vec<f64>,
    /// Repeatable; H, D and V by default.
    #[arg(long)]
    pub state: Vec<InitialState>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated suites; all by default.
    #[arg(long, value_delimiter = ',')]
    pub suite: Vec<Suite>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn emit(text: &str, output: &Option<PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Executes a parsed command line and returns the process exit status.
pub fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Sweep(a) => emit(&cmd_sweep(&a.config()?)?, &a.output)?,
        Command::Experiment(a) => emit(&cmd_experiment(&a.config()?)?, &a.output)?,
        Command::Asymptotic(a) => {
            let temperatures = if a.temperature.is_empty() {
                default_temperatures()
            } else {
                a.temperature.clone()
            };
            let states = if a.state.is_empty() {
                vec![InitialState::H, InitialState::D, InitialState::V]
            } else {
                a.state.clone()
            };
            emit(&cmd_asymptotic(&temperatures, &states)?, &a.output)?;
        }
        Command::Verify(a) => {
            let suites = if a.suite.is_empty() {
                Suite::ALL.to_vec()
            } else {
                a.suite.clone()
            };
            let (report, ok) = cmd_verify(&suites);
            emit(&report, &a.output)?;
            if !ok {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(0)
}
