use thiserror::Error;

/// Errors raised by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("registry error: {0}")]
    Registry(String),
    #[error("variable `{0}` may not carry a negative exponent")]
    NegativeExponent(String),
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("variable `{0}` evaluated at zero with a negative exponent")]
    ZeroDivision(String),
    #[error("polynomial already depends on the scaling variable")]
    AlreadyScaled,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("a theory needs dimension at least one")]
    EmptyTheory,
    #[error("hamiltonian is not nilpotent")]
    NotNilpotent,
    #[error("[L,H] != -H for the supplied pair")]
    NotDilationPair,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("index ({i},{j}) out of range for dimension {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("observable {index} has no single conformal dimension")]
    NonConformal { index: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
