use std::fmt;

use thiserror::Error;

/// A syntax error in curve, word, script or enumeration text. `position` is
/// a 0-based character offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn shifted(mut self, offset: usize) -> Self {
        self.position += offset;
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported surface N_{{{genus},{boundary}}}: {reason}")]
    InvalidSurface {
        genus: usize,
        boundary: usize,
        reason: String,
    },

    #[error("invalid curve {curve}: {reason}")]
    InvalidCurve { curve: String, reason: String },

    #[error("invalid generator {generator}: {reason}")]
    InvalidGenerator { generator: String, reason: String },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("{tag} instance rejected: {reason}")]
    InvalidInstance { tag: String, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
