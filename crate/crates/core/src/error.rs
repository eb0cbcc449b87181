use thiserror::Error;

/// Errors raised by the library. Every failure is a violated precondition:
/// the computations themselves are exact and total on their domains.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
