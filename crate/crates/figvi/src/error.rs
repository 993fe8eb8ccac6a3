//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("composition error: inner target degree {inner_target} != outer source degree {outer_source}")]
    Composition {
        inner_target: usize,
        outer_source: usize,
    },
    #[error("category mismatch: {0}")]
    CategoryMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("truncation error: {0}")]
    Truncation(String),
    #[error("invalid deletion: {r} lies in the image of the injection")]
    InvalidDeletion { r: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("degenerate stack: u^t vanishes on the line")]
    DegenerateStack,
    #[error("q = {q} is not invertible over F_{p}")]
    NonInvertibleQ { q: u64, p: u64 },
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("malformed label: {0}")]
    MalformedLabel(String),
    #[error("internal consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("theorem check failure: {0}")]
    TheoremCheckFailure(String),
    #[error("not a character: {0}")]
    NotACharacter(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
