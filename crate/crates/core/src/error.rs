use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by sampling, analytics and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("subgraph order {k} is outside 2..={n}")]
    OrderOutOfRange { k: usize, n: usize },

    #[error("clique enumeration exceeded its budget of {budget} candidate sets")]
    BudgetExceeded { budget: u64 },

    #[error("exact stationary solve supports n <= {max}, got n = {n}")]
    StateSpaceTooLarge { n: usize, max: usize },

    #[error("stationary linear system is singular")]
    SingularSystem,

    #[error("malformed edge list (line {line}): {reason}")]
    Parse { line: usize, reason: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParam(msg.into())
    }
}
