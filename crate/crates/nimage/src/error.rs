use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("center mismatch: {0} vs {1}")]
    CenterMismatch(String, String),
    #[error("unsupported combination: {0}")]
    UnsupportedCombination(String),
    #[error("non-elementary antiderivative: {0}")]
    NonElementary(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("value is not an exact rational: {0}")]
    Inexact(String),
    #[error("wronskian is not a single invertible term: {0}")]
    NonInvertibleWronskian(String),
    #[error("homogeneous solution vanishes or degenerates on the grid: {0}")]
    SingularHomogeneousSolution(String),
    #[error("non-finite value at x = {0}")]
    NonFiniteValue(f64),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedCombination(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
