//! Front end for `floer-core`: JSON formats, a thread-pool build and the
//! reproduction reports behind the `floer` binary.

pub mod cli;
pub mod dto;
pub mod parallel;
pub mod reproduce;

use floer_core::braid_core::BraidError;
use floer_core::invariants::InvariantError;
use thiserror::Error;

/// Process exit codes. These are a stable contract for scripts.
pub mod exit {
    pub const OK: i32 = 0;
    pub const ERROR: i32 = 1;
    pub const INCONCLUSIVE: i32 = 2;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error("unknown reproduction target '{0}' (expected one of: {1})")]
    UnknownTarget(String, String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}
