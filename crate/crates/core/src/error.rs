use thiserror::Error;

/// Errors raised across the library.
///
/// Variants fall into three families that the CLI and the C ABI map onto
/// distinct exit/status codes: malformed input, exhausted budgets and
/// internal failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid vertex token {0:?}: expected a nonempty string over [a-zA-Z0-9_]")]
    InvalidToken(String),
    #[error("loop edge on vertex {0}")]
    LoopEdge(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("invalid spin {0:?}: expected 1 or 2")]
    InvalidSpin(String),
    #[error("move {kind} at position {position} is not applicable")]
    MoveNotApplicable { kind: &'static str, position: usize },
    #[error("position {position} out of range for a word of length {len}")]
    IndexOutOfRange { position: usize, len: usize },
    #[error("malformed pair partition: {0}")]
    MalformedPartition(String),
    #[error("value out of domain: {0}")]
    Domain(String),
    #[error("N = {0} must be even and positive for words containing spin 2")]
    OddN(usize),
    #[error("word length {len} exceeds the limit of {limit}")]
    SizeLimit { len: usize, limit: usize },
    #[error("{what} budget exceeded: {needed} > {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("cannot parse input: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors caused by exhausting a configured budget or size bound.
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::SizeLimit { .. } | Error::BudgetExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
