use thiserror::Error;

/// Errors raised by the arithmetic, construction and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,

    #[error("no value assigned to indeterminate `{0}`")]
    MissingAssignment(String),

    #[error("unknown indeterminate `{0}`")]
    UnknownIndeterminate(String),

    #[error("invalid indeterminate name `{0}`")]
    InvalidIndeterminate(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid grading: {0}")]
    InvalidGrading(String),

    #[error("invalid family descriptor: {0}")]
    InvalidFamily(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("braid matrix does not satisfy the Hecke condition")]
    NotHecke,

    #[error("no supported annihilating polynomial for this family")]
    UnsupportedFamily,

    #[error("dimension {n} exceeds the crosscheck limit {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
