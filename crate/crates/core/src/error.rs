use thiserror::Error;

use crate::scalar::BaseRing;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by input handling and by operations called outside their
/// preconditions. Mathematical refusals (hypothesis failures, split
/// algebras) are values, not errors; see `witness` and `recognition`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("scalar does not belong to base ring {0}")]
    BaseMismatch(BaseRing),

    #[error("operation requires a field base ring, got {0}")]
    NotAField(BaseRing),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("exhaustive mode requires a finite base ring, got {0}")]
    InfiniteBase(BaseRing),

    #[error("zero is excluded from the zero-divisor test")]
    ZeroElement,

    #[error("denominator is not central")]
    NonCentralDenominator,

    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("{0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
