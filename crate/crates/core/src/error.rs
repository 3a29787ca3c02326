use thiserror::Error;

use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} has degree {degree}, greater than 3")]
    DegreeTooHigh { vertex: usize, degree: usize },

    #[error("vertex {vertex} has degree {degree}; at least 2 is required")]
    DegreeTooLow { vertex: usize, degree: usize },

    #[error("graph is not connected")]
    NotConnected,

    #[error("graph order {order} exceeds the supported bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },

    #[error("order bound exceeded: {order} > {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },

    #[error("invalid edge ({0}, {1}): {2}")]
    InvalidEdge(usize, usize, &'static str),

    #[error("edge ({}, {}) is not a bridge", .0.0, .0.1)]
    NotABridge(Edge),

    #[error("no edge ({}, {}) in graph", .0.0, .0.1)]
    NoSuchEdge(Edge),

    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),

    #[error("vector has {found} entries, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not a kernel eigenvector of the graph")]
    NotAKernelVector,

    #[error("step {index}: {source}")]
    StepSiteInvalid { index: usize, source: Box<Error> },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("record lists {expected} edges but {found} were found")]
    CountMismatch { expected: usize, found: usize },

    #[error("number of degree-3 vertices must be even, got {0}")]
    OddV3(usize),

    #[error("no chemical nut graph exists with (v3, v2) = ({v3}, {v2})")]
    NotRealisable { v3: usize, v2: usize },

    #[error("no planar chemical nut graph exists with (v3, v2) = ({v3}, {v2})")]
    NotPlanarRealisable { v3: usize, v2: usize },

    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),

    #[error("unknown seed id {0:?}")]
    UnknownSeed(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
