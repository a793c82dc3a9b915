use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("input error: {0}")]
    Input(String),
    /// Matrix or table dimensions that do not fit together.
    #[error("shape mismatch: {0}")]
    Shape(String),
    /// A request outside the implemented range (nilpotency, truncation degree, ...).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An internal invariant failed; indicates a bug rather than bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
