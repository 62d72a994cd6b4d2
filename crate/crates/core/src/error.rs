use thiserror::Error;

use crate::classify::ColorabilityClass;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph is not connected")]
    Disconnected,

    #[error("graph is not a cactus")]
    NotCactus,

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("graph is not colorable ({0})")]
    NonColorable(ColorabilityClass),

    #[error("graph has {edges} edges, more than the budget of {budget}")]
    EdgeBudgetExceeded { edges: usize, budget: usize },

    #[error("search step budget of {0} exhausted")]
    StepBudgetExceeded(u64),

    /// A construction that is guaranteed to succeed did not. Always a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
