use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("input contains no edges")]
    EmptyInput,

    #[error("node {node} out of range for graph with {node_count} nodes")]
    NodeOutOfRange { node: u64, node_count: usize },

    #[error("duplicate node {0} in event set")]
    DuplicateEventNode(NodeId),

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vector lengths differ ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    /// One side of the test is a single tie spanning every reference node,
    /// so the null variance is zero and the statistic carries no evidence.
    #[error("undetermined: {0}")]
    Degenerate(String),

    #[error("fewer than two reference nodes available (found {0})")]
    TooFewReferences(usize),

    #[error("index covers h <= {h_max}, requested h = {h}")]
    IndexLevel { h: u32, h_max: u32 },

    #[error("index built for {index} nodes but graph has {graph}")]
    IndexMismatch { index: usize, graph: usize },

    #[error("malformed index file: {0}")]
    BadIndex(String),

    #[error("infeasible simulation: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
