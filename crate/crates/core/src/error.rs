use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("enumeration of {size} codewords exceeds capacity limit {limit}")]
    Capacity { size: u128, limit: u128 },

    #[error("minimum distance undefined for the zero code")]
    ZeroCode,

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("Hensel lift failed: {0}")]
    Lift(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("series truncated at degree {have}, need degree {need}")]
    Degree { have: usize, need: usize },

    #[error("word {word:?} violates the runlength hypothesis: {reason}")]
    Hypothesis { word: String, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range for length {len}")]
    OutOfRange { index: usize, len: usize },

    #[error("schema mismatch: {0}")]
    Schema(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
