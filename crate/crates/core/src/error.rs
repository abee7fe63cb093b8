use crate::graph::Vertex;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<Error> },

    #[error("line {line}: file mixes `--` and `->` edge lines")]
    MixedEdgeStyles { line: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(Vertex, Vertex),

    #[error("arcs {0} -> {1} and {1} -> {0} both present")]
    BothDirections(Vertex, Vertex),

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: Vertex },

    #[error("{0} -> {1} is not an arc of the orientation")]
    NotAnArc(Vertex, Vertex),

    #[error("{target} is not a gamma-path target of arc {tail} -> {head}")]
    InvalidTarget {
        tail: Vertex,
        head: Vertex,
        target: Vertex,
    },

    #[error("{what} is {actual}, which exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        actual: u128,
        bound: u128,
    },

    #[error("no value given for vertex {0}")]
    MissingValue(Vertex),

    #[error("orientation does not orient the given graph")]
    NotAnOrientationOf,

    #[error("expected an orientation, found an undirected graph with edges")]
    ExpectedOrientation,

    #[error("invalid vertex partition: {0}")]
    InvalidPartition(String),

    #[error("invalid list assignment: {0}")]
    InvalidList(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Strips any line-number wrapping.
    pub fn kind(&self) -> &Error {
        match self {
            Error::AtLine { source, .. } => source.kind(),
            other => other,
        }
    }
}
