use thiserror::Error;

/// Errors raised by the exact-arithmetic, enumeration and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix shape error: {0}")]
    Shape(String),

    #[error("not divisible: {0}")]
    NotDivisible(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("singular evaluation: {0}")]
    Singular(String),

    #[error("sampling failure: {0}")]
    Sampling(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
