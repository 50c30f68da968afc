use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex count {0} exceeds the supported maximum of {max}", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("endpoint {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed graph6 string: {0}")]
    Graph6(String),

    #[error("invalid family: {0}")]
    Family(String),

    #[error("search guard: {0}")]
    Guard(String),

    #[error("budget exhausted: {0}")]
    Unsolved(String),

    #[error("partition error: {0}")]
    Partition(String),

    #[error("strategy error: {0}")]
    Strategy(String),

    #[error("construction precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
