use thiserror::Error;

use crate::ordering::Witness;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid simplicial set: {0}")]
    InvalidSimplicialSet(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("missing fiber order: {0}")]
    MissingFiberOrder(String),
    #[error("simplicial set is not one-dimensional (dimension {0})")]
    NotOneDimensional(usize),
    #[error("no cyclic ordering: {0}")]
    NoCyclicOrdering(String),
    #[error("search inconclusive at cutoff {cutoff}: node limit {limit} exceeded")]
    SearchInconclusive { cutoff: usize, limit: u64 },
    #[error("action assignment rejected: {0}")]
    InvalidAssignment(String),
    /// A noncommutative algebra was paired with a simplicial set without a
    /// consistent ordering; carries the certificate of failure when known.
    #[error("noncommutative coefficients refused: {reason}")]
    Refused {
        reason: String,
        witness: Option<Box<Witness>>,
    },
    #[error("not a sub-simplicial set: {0}")]
    NotSubset(String),
    #[error("degree {0} outside the computed range")]
    DegreeOutOfRange(usize),
    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
