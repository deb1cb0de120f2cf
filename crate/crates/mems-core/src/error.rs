use thiserror::Error;

/// Errors raised by the structural and numeric routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MemsError {
    #[error("invalid vertex set: {0}")]
    InvalidVertexSet(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("non-canonical partition `{given}` (canonical form is `{canonical}`)")]
    NonCanonicalPartition { given: String, canonical: String },
    #[error("empty restriction target")]
    EmptyRestriction,
    #[error("not a superset")]
    NotSuperset,
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("vertex-set mismatch")]
    VertexSetMismatch,
    #[error("enumeration limit: {0}")]
    EnumerationLimit(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("no factors: {0}")]
    NoFactors(String),
    #[error("dimension cap exceeded: {dim} > {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = MemsError> = std::result::Result<T, E>;
