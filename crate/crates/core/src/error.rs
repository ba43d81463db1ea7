use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pair {{{u},{v}}} has no color")]
    MissingPair { u: usize, v: usize },
    #[error("pair {{{u},{v}}} listed more than once")]
    DuplicatePair { u: usize, v: usize },
    #[error("pair {{{u},{v}}} has color {color}, but only {r} colors exist")]
    ColorOutOfRange {
        u: usize,
        v: usize,
        color: usize,
        r: usize,
    },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed template: {0}")]
    MalformedTemplate(String),
    #[error("not a tournament: {0}")]
    NotATournament(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("pattern enumeration exceeded its budget of {budget} nodes ({} classes found so far)", partial.len())]
    CatalogueBudget {
        budget: u64,
        partial: Box<crate::patterns::PatternCatalogue>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
