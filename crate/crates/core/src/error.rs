use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("digraph is not transitive")]
    NotTransitive,

    #[error("skeleton vertex {0} has zero multiplicity")]
    ZeroMultiplicity(usize),

    #[error("{what} has size {size}, above the supported bound {bound}")]
    TooLarge {
        what: &'static str,
        size: usize,
        bound: usize,
    },

    #[error("list of vertex {vertex} names {value}, but only {bound} targets exist")]
    BadLists {
        vertex: usize,
        value: usize,
        bound: usize,
    },

    #[error("vertex map does not embed the target: {0}")]
    NotEmbedded(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("digraph is empty")]
    EmptyGraph,

    #[error("white vertices {0} and {1} violate domination-freeness")]
    NotDominationFree(usize, usize),

    #[error("a side of the bipartite target has {size} vertices but the path length is set for {n}")]
    SideTooLarge { size: usize, n: usize },

    #[error("instance carries no valid embedding of the target: {0}")]
    NoEmbedding(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: index {index} out of range (bound {bound})")]
    Range {
        line: usize,
        index: usize,
        bound: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
