use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// The variants fall into three groups that the CLI maps onto exit codes:
/// domain errors (bad input), budget refusals, and algebraic failures of a
/// fit or identification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Domain(String),

    #[error("refused: estimated work {estimate} exceeds budget {budget} ({what})")]
    Budget {
        what: String,
        estimate: u128,
        budget: u128,
    },

    #[error("under-determined system: rank {rank} < {unknowns} unknowns")]
    Underdetermined { rank: usize, unknowns: usize },

    #[error("inconsistent system: {0}")]
    Inconsistent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
