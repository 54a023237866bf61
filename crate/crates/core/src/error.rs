use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arguments outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A quantity that must be an integer by construction was not.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
