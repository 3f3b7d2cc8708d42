use thiserror::Error;

use crate::graph::graph6::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6: {0}")]
    Graph6(#[from] ParseError),

    #[error("line {line}: {source}")]
    Corpus { line: usize, source: ParseError },

    #[error("graph order {n} exceeds the limit of {limit} for {what}")]
    OrderTooLarge { n: usize, limit: usize, what: &'static str },

    #[error("graph order {n} is below the minimum of {min} for {what}")]
    OrderTooSmall { n: usize, min: usize, what: &'static str },

    #[error("percolation threshold must be at least 1")]
    ZeroThreshold,

    #[error("threshold r = {r} is not supported by {what}")]
    UnsupportedThreshold { r: usize, what: &'static str },

    #[error("seed set is over {seed} vertices but the graph has {graph}")]
    UniverseMismatch { seed: usize, graph: usize },

    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("loops are not allowed (vertex {0})")]
    Loop(usize),

    #[error("degree {degree} is out of range for a sequence of length {n}")]
    DegreeOutOfRange { degree: usize, n: usize },

    #[error("degree sequence is not graphic")]
    NotGraphic,

    #[error("sequence lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
