use thiserror::Error;

/// Errors produced across the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("group SL(2,{p}) has order {order}, above the configured cap of {cap}")]
    GroupTooLarge { p: u32, order: u64, cap: u64 },

    #[error("invalid group element: {0}")]
    InvalidElement(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("no integer lift with |a|,|b| < {eta}/2 exists for pair ({m},{q})")]
    LiftNotFound { m: u32, q: u32, eta: u32 },

    #[error("generator pool exhausted: {0}")]
    Exhausted(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("CSS consistency check failed: {0}")]
    CssCheck(String),

    #[error("syndrome is not in the column space of the check matrix")]
    InconsistentSyndrome,

    #[error("descriptor integrity failure: {0}")]
    Integrity(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
