use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is not connected")]
    NotConnected,

    #[error("malformed graph6{}: {reason}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    MalformedGraph6 { line: Option<usize>, reason: String },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("index {index} out of range for dimension {bound}")]
    Index { index: usize, bound: usize },

    #[error("distance function undefined at distance {0}")]
    FUndefinedAtDistance(u32),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("labeled enumeration on {0} vertices is intractable; supply a graph6 file instead")]
    UseExternalFile(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn graph6(reason: impl Into<String>) -> Self {
        Error::MalformedGraph6 {
            line: None,
            reason: reason.into(),
        }
    }
}
