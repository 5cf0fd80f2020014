use std::io;

use casebelief_core::Error as CoreError;
use serde_json::json;

/// Failure of a command. Domain errors exit with 1, everything else with 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Malformed input; `message` carries the line and column when known.
    #[error("{origin}: {message}")]
    Format { origin: String, message: String },
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Domain(#[from] CoreError),
    /// A well-formed negative answer: the document is still written.
    #[error("{message}")]
    Negative { code: &'static str, message: String, document: String },
}

impl CliError {
    pub fn format(origin: &str, message: impl Into<String>) -> Self {
        CliError::Format { origin: origin.to_string(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(e) if !is_argument_error(e) => 1,
            CliError::Negative { .. } => 1,
            _ => 2,
        }
    }

    /// What goes to stderr: a JSON object for domain errors, a plain line
    /// otherwise.
    pub fn report(&self) -> String {
        match self {
            CliError::Domain(e) if self.exit_code() == 1 => {
                json!({ "error": e.code(), "message": e.to_string() }).to_string()
            }
            CliError::Negative { code, message, .. } => json!({ "error": code, "message": message }).to_string(),
            other => format!("error: {other}"),
        }
    }
}

/// Core errors that can only come from a bad flag value.
fn is_argument_error(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::UnknownVariable(_)
            | CoreError::UnknownValue { .. }
            | CoreError::EmptyComponent(_)
            | CoreError::EmptyVariableSubset
            | CoreError::SubsetIsWholeFrame
            | CoreError::OverlappingSubsets(_)
            | CoreError::MissingSeed
            | CoreError::InvalidSchedule
            | CoreError::DuplicateObservation(_)
    )
}
