use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An enumeration would exceed the configured budget.
    #[error("{what} needs {needed} but the budget is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    /// An online or bandit interaction broke the protocol (for example an
    /// unrealizable feed, or a learner answering with an unknown label).
    #[error("protocol error at round {round}: {message}")]
    Protocol { round: usize, message: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A checked invariant failed. This always indicates a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn protocol(round: usize, msg: impl Into<String>) -> Self {
        Error::Protocol {
            round,
            message: msg.into(),
        }
    }
}
