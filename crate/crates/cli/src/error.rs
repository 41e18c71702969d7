use std::fmt;

use zetalab_core::Error;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    /// A replay whose outputs differ from the manifest.
    Mismatch(String),
}

impl CliError {
    /// 0 success, 1 usage, 2 numerical non-convergence, 3 precondition violation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Mismatch(_) => 2,
            CliError::Core(e) => match e {
                Error::NonConvergence { .. } => 2,
                Error::Pole { .. } | Error::Domain(_) | Error::Precondition(_) | Error::Membership { .. } => 3,
                Error::UnknownName(_) | Error::Parse(_) => 1,
                Error::Io(_) | Error::Csv(_) | Error::Json(_) => 1,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) if m.starts_with("error:") => write!(f, "{}", m.trim_end()),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Mismatch(m) => write!(f, "replay mismatch: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(Error::Io(e))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Core(Error::Json(e))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Core(Error::Csv(e))
    }
}
