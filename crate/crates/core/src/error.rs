use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse scalar {input:?} at byte {position}: {message}")]
pub struct ParseScalarError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    /// An internal consistency check failed; this indicates a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    ParseScalar(#[from] ParseScalarError),

    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
