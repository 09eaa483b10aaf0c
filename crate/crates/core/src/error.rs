use thiserror::Error;

/// Errors shared across the crate.
///
/// Budget overruns get their own variant so callers (and the CLI exit-code
/// mapping) can tell a resource abort from a genuinely bad input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph is disconnected; split into connected components first")]
    Disconnected,

    #[error("{0}")]
    InvalidInput(String),

    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: String,
        needed: usize,
        limit: usize,
    },

    #[error("verification failure: {0}")]
    Verification(String),
}

impl Error {
    pub fn budget(what: impl Into<String>, needed: usize, limit: usize) -> Self {
        Error::Budget {
            what: what.into(),
            needed,
            limit,
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
