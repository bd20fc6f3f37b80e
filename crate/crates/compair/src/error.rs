use thiserror::Error;

/// Error type shared by all modules of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The operation is not defined for the given value.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A search size exceeded the configured cutoff and `force` was not set.
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    /// An exact integer coefficient overflowed 64-bit arithmetic.
    #[error("coefficient overflow: {0}")]
    CoefficientOverflow(String),
    /// An invariant that should hold by construction was violated.
    #[error("internal error: {0}")]
    InternalError(String),
    /// Reading or writing a checkpoint or report file failed.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
