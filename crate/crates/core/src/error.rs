use thiserror::Error;

/// Errors raised by the library.
///
/// "Not a unit" and "not invertible" are ordinary outcomes and are reported
/// through `Option`, never through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A ring spec, realization or index with invalid parameters.
    #[error("configuration error: {0}")]
    Config(String),
    /// A call whose preconditions do not hold (shape mismatch, malformed parameter).
    #[error("usage error: {0}")]
    Usage(String),
    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency error: {0}")]
    Internal(String),
    /// A value violates an invariant that construction should have guaranteed.
    #[error("data corruption: {0}")]
    DataCorruption(String),
    /// The request names something the library deliberately does not model.
    #[error("out of scope: {0}")]
    OutOfScope(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}
