use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown basis label `{label}` in space `{space}`")]
    UnknownLabel { space: String, label: String },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("non-homogeneous entry {entry}: expected output degree {expected}, found {found}")]
    Degree {
        entry: String,
        expected: i32,
        found: i32,
    },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("arity {arity} requested beyond the exact range (known through {known})")]
    BeyondCap { arity: usize, known: usize },
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
