use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("record `{name}` is inconsistent: {}", contradictions.join("; "))]
    Inconsistent {
        name: String,
        contradictions: Vec<String>,
    },
    #[error("duplicate record name `{0}`")]
    Duplicate(String),
    #[error("unknown knot `{0}`")]
    UnknownKnot(String),
    #[error("{0}")]
    Domain(#[from] sharpknot::Error),
    #[error("{0}")]
    Usage(String),
}
