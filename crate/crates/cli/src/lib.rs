//! Sweeps, temperature scans, simulated experiments and verification suites
//! on top of `irrev-core`, emitted as CSV.

pub mod args;
pub mod commands;
pub mod config;
pub mod format;
pub mod verify;

use thiserror::Error;

pub use args::{run, Cli};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] irrev_core::Error),
    #[error("{0}")]
    Usage(String),
}

/// Process exit status for a failed verification.
pub const EXIT_VERIFY_FAILED: u8 = 1;
/// Process exit status for bad flags, bad input or I/O failure.
pub const EXIT_USAGE: u8 = 2;
