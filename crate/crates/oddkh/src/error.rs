use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid diagram: {0}")]
    Diagram(String),

    #[error("inconsistent orientation: {0}")]
    Orientation(String),

    #[error("unknown arc {0}")]
    UnknownArc(u32),

    #[error("resolution string has length {got}, diagram has {expected} crossings")]
    AlphaLength { expected: usize, got: usize },

    #[error("{n} crossings exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid move: {0}")]
    Move(String),

    #[error("face {face} could not be classified: {msg}")]
    Classify { face: String, msg: String },

    #[error("sign assignment: {0}")]
    Signs(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("event {index}: {source}")]
    Event {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures of internal invariants rather than bad input.
    pub fn is_internal(&self) -> bool {
        match self {
            Error::Invariant(_) | Error::Classify { .. } | Error::Signs(_) => true,
            Error::Event { source, .. } => source.is_internal(),
            _ => false,
        }
    }
}
