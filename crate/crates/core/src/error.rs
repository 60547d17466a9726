use thiserror::Error;

/// Errors raised by the library. Algorithmic shortfalls (no tree, no rich
/// class, ...) are values, not errors; this type covers bad input only.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{oracle} oracle refuses {n} vertices (cap is {cap})")]
    OracleCap {
        oracle: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("graph is not properly edge-coloured ({violations} violations)")]
    Improper { violations: usize },

    #[error("graph is not complete ({edges} of {expected} edges)")]
    Incomplete { edges: usize, expected: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}
