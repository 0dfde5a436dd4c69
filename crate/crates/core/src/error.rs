use thiserror::Error;

use crate::complex::CellId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("complex has no cells")]
    Empty,

    #[error("duplicate cell: {0}")]
    DuplicateCell(String),

    #[error("malformed cell: {0}")]
    Malformed(String),

    #[error("unknown cell {0}")]
    UnknownCell(CellId),

    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },

    #[error("grade {0} is out of range for this operation")]
    GradeOutOfRange(usize),

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("chain is not a cycle: {0}")]
    NotACycle(String),

    /// The input does not satisfy the manifold preconditions of an algorithm.
    #[error("precondition failed: {0}")]
    Gate(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("shelling run is no longer in progress")]
    RunFinished,

    #[error("no cap available around {0}")]
    NoCap(String),

    #[error("residual fill needs {needed} sweep layers but the depth limit is {limit}")]
    DepthExhausted { needed: usize, limit: usize },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
