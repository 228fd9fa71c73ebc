use algpoints::Error as CoreError;
use thiserror::Error;

/// Failure classes with distinct exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("validation error: {0}")]
    Validation(String),
    #[error("resource exhausted: {0}")]
    Exhausted(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
    /// Help or version text requested; not a failure.
    #[error("{0}")]
    Info(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Exhausted(_) => 3,
            CliError::Io(_) | CliError::Other(_) => 1,
            CliError::Info(_) => 0,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BudgetExceeded { .. } | CoreError::PrecisionExhausted { .. } => CliError::Exhausted(e.to_string()),
            CoreError::InvalidInput(_)
            | CoreError::UnsupportedDegree { .. }
            | CoreError::UnsupportedCoordinate(_)
            | CoreError::SectorViolation => CliError::Validation(e.to_string()),
            other => CliError::Other(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Other(format!("csv: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Other(format!("json: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
