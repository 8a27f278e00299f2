use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("empty index set")]
    EmptyIndexSet,

    #[error("enumeration of {what} needs {count} branches, limit is {limit}")]
    LimitExceeded {
        what: &'static str,
        count: u128,
        limit: u128,
    },

    /// A checkable consequence of an instance's promise does not hold.
    #[error("promise violation: {0}")]
    PromiseViolation(String),

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("vertical hyperplane: {0}")]
    Vertical(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("cannot parse rational {text:?}: {reason}")]
    ParseRational { text: String, reason: &'static str },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_limit(what: &'static str, count: u128, limit: u128) -> Result<()> {
    if count > limit {
        Err(Error::LimitExceeded { what, count, limit })
    } else {
        Ok(())
    }
}
