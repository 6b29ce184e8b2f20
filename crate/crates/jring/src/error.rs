use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
///
/// `Math` marks a failed mathematical assertion (a structure check that did
/// not hold), which front ends treat differently from bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation at zero")]
    ZeroPoint,
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("size bound exceeded: {0}")]
    Bound(String),
    #[error("mismatched operands: {0}")]
    Mismatch(String),
    #[error("unclassified case: {0}")]
    Unclassified(String),
    #[error("assertion failed: {0}")]
    Math(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn math(msg: impl Into<String>) -> Self {
        Error::Math(msg.into())
    }

    pub fn is_math(&self) -> bool {
        matches!(self, Error::Math(_))
    }
}
