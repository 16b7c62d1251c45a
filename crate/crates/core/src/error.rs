use thiserror::Error;

/// Errors raised across the solver pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("segment set is empty")]
    DegenerateInput,

    #[error("no arrangement face found for object {0}")]
    ObjectFaceNotFound(usize),

    #[error("a source node is also a sink node ({0})")]
    NoSeparationNeeded(usize),

    #[error("color {0} has no objects")]
    EmptyColorClass(usize),

    #[error("exhaustive search too large: {free} free nodes with {labels} labels exceeds budget {budget}")]
    TooLarge {
        free: usize,
        labels: usize,
        budget: u128,
    },

    #[error("cut references unknown dual edge {0}")]
    ProvenanceMismatch(usize),

    #[error("thickness {0} must lie in (0, 0.05]")]
    BadThickness(String),

    #[error("random generation exhausted its rejection budget after {0} attempts")]
    GenerationTimeout(usize),

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("method {method} requires {requirement}")]
    MethodMismatch {
        method: &'static str,
        requirement: String,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("bad coordinate {0:?}: expected a decimal or p/q string")]
    BadCoordinate(String),

    #[error("failed to write output: {0}")]
    SinkWriteFailure(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
