//! Library surface of the experiment harness: configs, records, and the
//! command dispatcher. The binary is a thin argument-parsing shell over
//! [`commands::run`], so tests can drive every command in-process.

pub mod commands;
pub mod config;
pub mod record;

use thiserror::Error;

/// Process exit codes: 2 usage, 3 validation, 4 I/O.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("validation: {0}")]
    Validation(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<qcomm_core::MathError> for CliError {
    fn from(e: qcomm_core::MathError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<qcomm_core::ProtocolError> for CliError {
    fn from(e: qcomm_core::ProtocolError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<qcomm_core::classical::ClassicalError> for CliError {
    fn from(e: qcomm_core::classical::ClassicalError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<qcomm_core::lemma::LemmaError> for CliError {
    fn from(e: qcomm_core::lemma::LemmaError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
