use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("{0}")]
    Domain(String),

    #[error("size limit exceeded: {0}")]
    Size(String),

    #[error("unsupported table: basis pair ({i}, {j}) {reason}")]
    UnsupportedTable { i: usize, j: usize, reason: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
