use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("budget exceeded: {what} needs {needed}, limit {limit}")]
    Budget { what: String, needed: u128, limit: u128 },
    #[error("mismatched operands: {0}")]
    Mismatch(String),
    #[error("representations are inequivalent (inner product {0})")]
    Inequivalent(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("value is not integral: {0}")]
    NonIntegral(String),
    #[error("extraction failed: {0}")]
    Extraction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
