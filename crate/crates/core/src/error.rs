use thiserror::Error;

/// Errors raised by the workbench. Every variant names the offending input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: size {got} exceeds the supported limit {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("a graph needs at least one vertex")]
    EmptyGraph,

    #[error("0^alpha with alpha = {alpha} < 0 at isolated vertex {vertex}")]
    Domain { vertex: usize, alpha: f64 },

    #[error("product over an empty edge set is undefined")]
    UndefinedProduct,

    #[error("graphs of different orders ({0} vs {1}) cannot be compared")]
    OrderMismatch(usize, usize),

    #[error("sequences of different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("sequence {0:?} is not sorted as required")]
    NotSorted(Vec<usize>),

    #[error("parts are unbalanced ({0} vs {1})")]
    Unbalanced(usize, usize),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("sequences are not comparable under majorization")]
    NotComparable,

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("infeasible input: {0}")]
    Infeasible(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("the class is empty")]
    EmptyClass,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_cap(what: &'static str, limit: usize, got: usize) -> Result<()> {
    if got > limit {
        Err(Error::Capacity { what, limit, got })
    } else {
        Ok(())
    }
}
