use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("graph has no perfect matching")]
    NoPerfectMatching,

    #[error("search budget of {limit} nodes exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("graph is not in class {0}")]
    NotInClass(&'static str),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("size limit exceeded: {what} is {actual}, limit {limit}")]
    TooLarge { what: &'static str, actual: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}
