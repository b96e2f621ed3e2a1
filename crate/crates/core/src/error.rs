//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("network is invalid: {0}")]
    InvalidNetwork(String),

    #[error("operation requires a monotone network")]
    NonMonotone,

    #[error("dilation factor must be nonnegative")]
    NegativeDilation,

    #[error("vertex list must be nonempty")]
    EmptyVertexSet,

    #[error("polyhedron is infeasible")]
    Infeasible,

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("enumeration too large: {subsets} candidate active sets exceed the limit {limit}")]
    EnumerationTooLarge { subsets: u128, limit: u128 },

    #[error("objective vector must be nonzero")]
    ZeroObjective,

    #[error("objective vectors do not form a basis")]
    NotABasis,

    #[error("linear program over {context} returned {status}")]
    UnexpectedLpStatus {
        context: &'static str,
        status: &'static str,
    },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
