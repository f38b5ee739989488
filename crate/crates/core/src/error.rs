use thiserror::Error;

/// Errors raised by the calculus. Verification breaches are reported in
/// result values, never through this type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error("missing invariant `{0}`")]
    Missing(&'static str),
    #[error("inconsistent record [{rule}]: {message}")]
    Inconsistent { rule: String, message: String },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn inconsistent(rule: impl Into<String>, message: impl Into<String>) -> Error {
        Error::Inconsistent {
            rule: rule.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
