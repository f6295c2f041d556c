use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("weight {0:?} is not dominant (must be non-increasing)")]
    NotDominant(Vec<i64>),

    #[error("Lie algebra `{0}` has no matrix realization")]
    MissingRealization(String),

    #[error("residue unresolved at witness pole bound {bound} (escalation cap reached)")]
    Unresolved { bound: u32 },

    #[error("inconsistent character table: {0}")]
    InconsistentTable(String),

    #[error("form is not valid: {0}")]
    InvalidForm(String),

    #[error("form does not lie in the requested coordinate space: {0}")]
    NotInSpace(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0}")]
    Bookkeeping(String),
}

pub type Result<T> = std::result::Result<T, Error>;
