//! Std companion to `rankspectra-core`: configuration files, data and
//! report formats, the parallel study runner, and run manifests. The
//! binary in `main.rs` is a thin layer over this library.

pub mod config;
pub mod io;
pub mod manifest;
pub mod output;
pub mod runner;

use std::process::ExitCode;

/// Errors with a process exit code: 2 for validation problems, 3 for
/// numeric failures, 4 when a study setting aborts entirely.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    StudyAborted(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) => ExitCode::from(2),
            CliError::Numeric(_) => ExitCode::from(3),
            CliError::StudyAborted(_) => ExitCode::from(4),
        }
    }

    pub fn validation(msg: impl Into<String>) -> CliError {
        CliError::Validation(msg.into())
    }
}

impl From<rankspectra_core::Error> for CliError {
    fn from(e: rankspectra_core::Error) -> CliError {
        use rankspectra_core::Error as E;
        match &e {
            E::Config(_) | E::UnknownDistribution(_) | E::Range(_) | E::UnsupportedMethod(_) => {
                CliError::Validation(e.to_string())
            }
            E::Domain(_)
            | E::Convergence(_)
            | E::Numerical(_)
            | E::DegenerateColumn(_)
            | E::DegenerateSpectrum(_)
            | E::Fit(_) => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Validation(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
