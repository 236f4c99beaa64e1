use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    InvalidPartition(Vec<u32>),

    #[error("partition {parts:?} is not {k}-bounded")]
    NotBounded { parts: Vec<u32>, k: u32 },

    #[error("partition {parts:?} is not a {r}-core")]
    NotCore { parts: Vec<u32>, r: u32 },

    #[error("invalid reduced state for k={k}: {reason}")]
    InvalidState { k: u32, reason: String },

    #[error("malformed word {0:?}")]
    InvalidWord(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("linear system is singular (rank {rank} < {expected})")]
    Singular { rank: usize, expected: usize },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("reconstruction exceeds the configured cap of {cap} parts")]
    MemoryCap { cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
