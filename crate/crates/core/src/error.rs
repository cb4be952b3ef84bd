use thiserror::Error;

/// Errors raised by model construction and input handling.
///
/// Verification failures are never errors: every `verify_*` routine returns a
/// report whose `passed` flag carries the outcome.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("invalid CM group: {0}")]
    InvalidCmGroup(String),

    #[error("resource cap exceeded: {what} ({actual} > {limit})")]
    Resource {
        what: String,
        limit: usize,
        actual: usize,
    },

    #[error("model invariant violated: {0}")]
    Model(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(what: impl Into<String>, limit: usize, actual: usize) -> Self {
        Error::Resource {
            what: what.into(),
            limit,
            actual,
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 3,
            Error::Model(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
