use thiserror::Error;

use crate::graph::ChordWitness;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),

    #[error("{0} and {1} are not adjacent")]
    NotAnEdge(usize, usize),

    #[error("coloring does not match graph: {0}")]
    ColoringMismatch(String),

    #[error("coloring is not proper: edges {0} and {1} share a vertex and a color")]
    NotProper(usize, usize),

    #[error("vertex {0} has no missing color")]
    NoMissingColor(usize),

    #[error("missing assignment is invalid at vertex {0}")]
    InvalidMissing(usize),

    #[error("colors {c} and {d} do not meet vertex {anchor}")]
    EmptyAnchor { c: u32, d: u32, anchor: usize },

    #[error("replay failed at step {step}: {reason}")]
    Replay { step: usize, reason: String },

    #[error("edge set is not a matching: edges {0} and {1} share a vertex")]
    NotAMatching(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph is neither triangle-free nor chordless (chord witness: {0:?})")]
    ClassViolation(ChordWitness),

    #[error("fan leaves overlap at vertex {0}; graph is neither triangle-free nor chordless here")]
    LeafOverlap(usize),

    #[error("class violation: {0}")]
    ClassBreach(String),

    #[error("internal invariant breach: {0}")]
    Invariant(String),

    #[error("descent stalled with {bad} bad and {ugly} ugly edges: {detail}")]
    Stall { bad: usize, ugly: usize, detail: String },

    #[error("enumeration cap of {0} colorings exceeded")]
    CapExceeded(usize),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
