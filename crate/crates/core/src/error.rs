use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Rejected input parameters (non-prime p, p = 2, zero dimensions, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two values that must share ring parameters or shape do not.
    #[error("shape mismatch: {0}")]
    Mismatch(String),

    /// Inversion of an element with positive valuation.
    #[error("non-unit element (pi-valuation {0})")]
    NonUnit(u32),

    /// A precondition of the operation does not hold for this input.
    #[error("domain error: {0}")]
    Domain(String),

    /// The computation would exceed a hard enumeration or size budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A guaranteed-by-construction step failed; indicates a library bug.
    #[error("internal invariant violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
