use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was applied outside its domain (division by zero, the
    /// zero point of projective space, an unsupported charge).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A structural invariant of the input does not hold (non-symmetric
    /// matrix, non-orthogonal group element, ...).
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("sampling failed: {0}")]
    Sampling(String),

    /// The fiber system has a trivial kernel, so there is no solution to
    /// draw a witness from.
    #[error("no witness available: {0}")]
    WitnessUnavailable(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
