//! File formats, the verification suite and the command implementations
//! behind the `calogero` binary.

pub mod app;
pub mod document;
pub mod random;
pub mod verify;

use std::path::PathBuf;

/// Errors surfaced by the command line, each with a stable exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] calogero_core::Error),
    #[error("{0}")]
    Invalid(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    /// 1 for runtime or verification failures, 2 for usage and validation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(_) | CliError::Invalid(_) => 2,
            CliError::Io { .. } | CliError::VerificationFailed => 1,
        }
    }
}
