use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown letter {0}")]
    UnknownLetter(String),
    #[error("UP-word period must be non-empty")]
    EmptyPeriod,
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid algebra: {}", .0.join("; "))]
    InvalidAlgebra(Vec<String>),
    #[error("algebra is not trim: {0}")]
    NotTrim(String),
    #[error("algebra is not prefix-independent: {0}")]
    NotPrefixIndependent(String),
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: usize },
    #[error("invalid arena: {}", .0.join("; "))]
    InvalidArena(Vec<String>),
    #[error("invalid game structure: {}", .0.join("; "))]
    InvalidCgs(Vec<String>),
    #[error("invalid family: {0}")]
    InvalidFamily(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("formula outside fragment: {0}")]
    Fragment(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
