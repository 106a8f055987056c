use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor a prime below 2^31")]
    InvalidCharacteristic(u64),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("entry ({row}, {col}) is not homogeneous of degree {expected}")]
    Homogeneity {
        row: usize,
        col: usize,
        expected: i64,
    },

    #[error("cannot compose: {0}")]
    Composition(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parameter out of range: {0}")]
    Parameter(String),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("insufficient data: need at least {needed} terms, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
