//! Batch driver: configuration, subcommands and report writers behind the
//! `dunkl` binary.

// `!(a >= b)` is used on purpose so that NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod svg;
pub mod suite;

use thiserror::Error;

/// Exit status for usage and configuration errors.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when a check or scan ran but failed.
pub const EXIT_FAIL: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] config::ConfigError),
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dunkl::Error),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) | CliError::Json(_) | CliError::Csv(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_USAGE,
            CliError::Core(_) => EXIT_FAIL,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
