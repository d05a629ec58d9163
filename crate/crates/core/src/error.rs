use thiserror::Error;

use crate::link::Edge;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("no crossings or circles given")]
    Empty,

    #[error("edge {edge} occurs {count} times (expected 2)")]
    EdgeMultiplicity { edge: Edge, count: usize },

    #[error("inconsistent orientation along the component through edge {edge}")]
    InconsistentOrientation { edge: Edge },

    #[error("invalid braid letter {letter} for width {width}")]
    BraidLetter { letter: i32, width: usize },

    #[error("braid width must be positive")]
    BraidWidth,

    #[error("torus parameter must satisfy q >= {min}, got {q}")]
    TorusParam { q: i64, min: i64 },

    #[error("smoothing has length {got}, diagram has {expected} crossings")]
    SmoothingLength { expected: usize, got: usize },

    #[error("invalid crossing selection: {0}")]
    Selection(String),

    #[error("diagram has {crossings} crossings, cube limit is {limit}")]
    CubeLimit { crossings: usize, limit: usize },

    #[error("not a Frobenius algebra: {0}")]
    Frobenius(String),

    #[error("check failed: {0}")]
    Check(String),

    #[error("empty table")]
    EmptyTable,
}

pub type Result<T> = std::result::Result<T, Error>;
