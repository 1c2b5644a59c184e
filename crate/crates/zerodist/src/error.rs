use std::path::PathBuf;

use thiserror::Error;

/// Everything that makes the command-line tool exit non-zero.
#[derive(Debug, Error)]
pub enum CliError {
    /// Inputs outside their documented domain, including bad family descriptors.
    #[error("validation failed: {0}")]
    Validation(String),
    /// A computation finished but missed its gate, or could not finish.
    #[error("numeric check failed: {0}")]
    Numeric(String),
    /// Unreadable or malformed run configuration.
    #[error("bad config: {0}")]
    Config(String),
    #[error("cannot write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Config(_) => 4,
            CliError::Io { .. } => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<zerodist_core::Error> for CliError {
    fn from(e: zerodist_core::Error) -> Self {
        use zerodist_core::Error as E;
        match e {
            E::InvalidParameter(_) | E::InvalidProfile(_) | E::NotAnInterval { .. } => {
                CliError::Validation(e.to_string())
            }
            E::InterlacingViolation { .. }
            | E::ToleranceFailure { .. }
            | E::NearPole { .. }
            | E::OnCut { .. }
            | E::Ambiguity { .. } => CliError::Numeric(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
