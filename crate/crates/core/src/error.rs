use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("route not applicable: {0}")]
    NotApplicable(String),
    #[error("degenerate map: {0}")]
    Degenerate(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("invalid map specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
