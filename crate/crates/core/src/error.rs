use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("edge #{index} repeats {{{u},{v}}} (first seen as edge #{first})")]
    DuplicateEdge {
        index: usize,
        first: EdgeId,
        u: VertexId,
        v: VertexId,
    },
    #[error("edge #{index} is a self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: VertexId },
    #[error("edge #{index} names vertex {vertex}, outside 0..{n}")]
    VertexOutOfRange {
        index: usize,
        vertex: VertexId,
        n: usize,
    },
    #[error("edge #{index} has invalid weight {weight}")]
    InvalidWeight { index: usize, weight: f64 },
    #[error("{pairs} edges but {weights} weights")]
    WeightCountMismatch { pairs: usize, weights: usize },
    #[error("malformed graph6 at byte {offset}: {reason}")]
    MalformedGraph6 { offset: usize, reason: String },
    #[error("graph6 cannot encode {n} vertices")]
    Graph6TooLarge { n: usize },
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("edge sets have different dimensions ({left} vs {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("edge set is empty")]
    Empty,
    #[error("vertex {vertex} has degree {degree} in the edge set")]
    NotTwoRegular { vertex: VertexId, degree: usize },
    #[error("edge set splits into {components} disjoint cycles")]
    Disconnected { components: usize },
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("walk is not a cycle of the graph: {reason}")]
    InvalidWalk { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrinbergError {
    #[error("face degree {degree} is below 3")]
    DegreeTooSmall { degree: usize },
    #[error("max_solutions must be at least 1")]
    ZeroSolutionCap,
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RemovalError {
    #[error("vertex {vertex} has no incident edge in the working set")]
    IsolatedInSet { vertex: VertexId },
    #[error("cycle is not a member of the working set")]
    CycleNotInSet,
}
