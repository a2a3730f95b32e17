use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cell index {index} out of range 1..={n_cells}")]
    IndexOutOfRange { index: usize, n_cells: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("strategy exhausted: {needed} terms needed, {available} available")]
    StrategyExhausted { needed: usize, available: usize },

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("underpowered test: {samples} samples for {bins} bins (need at least {required})")]
    Underpowered {
        samples: u64,
        bins: usize,
        required: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
