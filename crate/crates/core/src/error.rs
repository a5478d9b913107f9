use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, got {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("malformed rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("column {column} is nonzero but sums to zero")]
    ZeroSumColumn { column: usize },

    #[error("exhaustive direction pass needs at most 16 columns, got {cols}")]
    TooManyColumns { cols: usize },

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn shape_err(expected: impl Into<String>, found: impl Into<String>) -> Error {
    Error::ShapeMismatch {
        expected: expected.into(),
        found: found.into(),
    }
}
