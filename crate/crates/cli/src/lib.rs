//! Sweeps, single-point evaluation and crossover search on top of
//! `ensconc-core`.

pub mod config;
pub mod crossover;
pub mod row;
pub mod selftest;
pub mod sweep;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ensconc_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("config: {0}")]
    Config(String),
}

impl CliError {
    /// Exit code: 2 for bad input, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Core(ensconc_core::Error::Domain(_)) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub use config::{FileConfig, LambdaGrid, OutputFormat, SweepSpec};
pub use crossover::{find_crossover, Crossover};
pub use row::{evaluate_row, SweepRow, CSV_HEADER};
pub use sweep::run_sweep;
