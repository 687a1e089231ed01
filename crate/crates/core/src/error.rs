use std::fmt;

use thiserror::Error;

/// A hypothesis of the Ext computation that a graph failed to meet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    /// The graph has sinks (listed by id).
    NoSinks(Vec<String>),
    /// Some cycle has no exit.
    ConditionL,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::NoSinks(sinks) => write!(f, "graph has sinks: {}", sinks.join(", ")),
            Hypothesis::ConditionL => f.write_str("Condition (L) fails"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("duplicate id `{0}`")]
    DuplicateId(String),

    #[error("edges `{0}` and `{1}` do not compose")]
    BrokenPath(String, String),

    #[error("empty path")]
    EmptyPath,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("element belongs to a different cokernel presentation")]
    PresentationMismatch,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(Hypothesis),

    #[error("negative entry {value} at position {index}")]
    NegativeEntry { index: usize, value: String },

    #[error("extensions have different base graphs")]
    BaseMismatch,

    #[error("invalid 1-sink extension: {0}")]
    InvalidExtension(String),

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
