use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("cardinality mismatch: {0}")]
    CardinalityMismatch(String),

    #[error("not a polarized subset: {0}")]
    NotPolarized(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("point is outside the chamber: {0}")]
    NotInChamber(String),

    #[error("duplicate row label `{0}`")]
    DuplicateLabel(String),

    /// An assertion-level failure: the computation contradicted itself.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
