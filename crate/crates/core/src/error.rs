use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate cell")]
    DegenerateCell,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid mesh: {0}")]
    InvalidMesh(String),

    #[error("index {index} out of range (len {len})")]
    OutOfRange { index: usize, len: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),

    #[error("objective infeasible on both sides of coordinate {0}")]
    InfeasibleProbe(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
