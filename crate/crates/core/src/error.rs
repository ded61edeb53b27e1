use thiserror::Error;

use crate::graph::{Arc, Vertex};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("loop at vertex {0}")]
    Loop(Vertex),

    #[error("arc ({}, {}) appears more than once", .0.tail, .0.head)]
    DuplicateArc(Arc),

    #[error("edge {{{0}, {1}}} appears more than once")]
    DuplicateEdge(Vertex, Vertex),

    #[error("arc ({}, {}) is not present in the graph", .0.tail, .0.head)]
    MissingArc(Arc),

    #[error("subdivision count must be at least 1")]
    ZeroSubdivision,

    #[error("error functions are defined on distances d >= 1, got d = 0")]
    ZeroDistance,

    #[error("invalid error function: {0}")]
    InvalidFunction(String),

    #[error("invalid bound specification `{spec}`: {reason}")]
    BoundSyntax { spec: String, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} has size {size}, above the exhaustion limit {limit}")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("the unmodified graph already violates the bound; no arc set is feasible")]
    Infeasible,

    #[error(
        "threshold t = f_alpha(1) + f_beta(1) = {t} is below 2; such instances are trivially No \
         and are excluded from the reduction"
    )]
    ThresholdBelowTwo { t: String },

    #[error("unsupported bound for the reduction: {0}")]
    UnsupportedBound(String),

    #[error("budget l = {l} is out of range for a graph on {n} vertices")]
    BudgetOutOfRange { l: usize, n: usize },

    #[error("vertex set is not a dominating set")]
    NotDominating,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}
