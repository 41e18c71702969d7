use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pole of {what} at s = {at}")]
    Pole { what: &'static str, at: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{what} did not converge: error estimate {achieved:.3e} exceeds tolerance {requested:.3e}")]
    NonConvergence {
        what: String,
        achieved: f64,
        requested: f64,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("{name} is not a member of the Poisson space: failed {failed:?}")]
    Membership { name: String, failed: Vec<String> },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn pole(what: &'static str, at: impl std::fmt::Display) -> Self {
        Error::Pole {
            what,
            at: at.to_string(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
