use thiserror::Error;

use crate::model::Problem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown operator name `{0}`")]
    UnknownOperatorName(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The escape procedure found no strictly better state within its depth
    /// limit. Either the instance is unsolvable or the limit is too small.
    #[error("escape exhausted: no state with h < {h} within depth {depth_limit}")]
    EscapeExhausted {
        h: u64,
        depth_limit: usize,
        /// The training or test problem being solved, when known.
        problem: Option<Box<Problem>>,
    },

    #[error("node budget of {budget} generated nodes exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("wall layout disconnects the grid")]
    DisconnectedGrid,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn is_escape_exhausted(&self) -> bool {
        matches!(self, Error::EscapeExhausted { .. })
    }
}
