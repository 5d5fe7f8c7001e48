use thiserror::Error;

/// Errors raised by the clustering library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty point set")]
    EmptySet,

    #[error("insufficient points: need at least {k}, have {n}")]
    InsufficientPoints { n: usize, k: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),

    #[error("measure lacks the centroid property: {0}")]
    UnsupportedMeasure(String),

    #[error("matrix is not symmetric positive definite: {0}")]
    NotPositiveDefinite(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("ragged rows: line {line} has {got} columns, expected {expected}")]
    RaggedRows {
        line: u64,
        expected: usize,
        got: usize,
    },

    #[error("empty file")]
    EmptyFile,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
