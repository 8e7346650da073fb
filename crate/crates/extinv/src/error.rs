//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("malformed rational `{0}`")]
    BadRational(String),
    #[error("invalid algebra context: {0}")]
    BadContext(String),
    #[error("mismatched algebra contexts")]
    MismatchedContexts,
    #[error("degree {degree} exceeds cap {cap}")]
    DegreeAboveCap { degree: usize, cap: usize },
    #[error("invalid monomial for context: {0}")]
    BadMonomial(String),
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("unsupported substitution: {0}")]
    UnsupportedSubstitution(String),
    #[error("generator is not invertible")]
    NonInvertibleGenerator,
    #[error("group closure exceeded cap of {0} elements")]
    EnumerationCapExceeded(usize),
    #[error("operation not supported for the {0} sign rule")]
    UnsupportedRule(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("problem file: {0}")]
    Problem(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
