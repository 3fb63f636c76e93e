use thiserror::Error;

/// Errors produced by parsing, construction and the structural operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error at line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("invalid valuation: {0}")]
    Valuation(String),

    #[error("not an eigenvector: {0}")]
    NotEigenvector(String),

    #[error("precondition violated: {0}")]
    Contract(String),

    #[error("{what} supports at most n = {bound}, got n = {n}")]
    BoundExceeded {
        what: &'static str,
        n: usize,
        bound: usize,
    },

    #[error("rejected: {0}")]
    Rejected(String),

    #[error("graph has cyclomatic number {c}, structural solver limit is {limit}")]
    TooCyclic { c: usize, limit: usize },

    #[error("invalid certificate record: {0}")]
    Record(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
