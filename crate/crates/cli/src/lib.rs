//! File formats, generators and reduction pipelines behind the `lcpuso` binary.

pub mod dot;
pub mod format;
pub mod gen;
pub mod ops;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("promise violation: {0}")]
    Promise(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Promise(_) => 2,
            CliError::Parse(_) | CliError::Schema(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<lcpuso::Error> for CliError {
    fn from(e: lcpuso::Error) -> Self {
        use lcpuso::Error as E;
        match e {
            E::PromiseViolation(_) | E::Degenerate(_) | E::Vertical(_) => CliError::Promise(e.to_string()),
            E::ParseRational { .. } => CliError::Parse(e.to_string()),
            _ => CliError::Schema(e.to_string()),
        }
    }
}
