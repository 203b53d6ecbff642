use std::path::PathBuf;

use sumset_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {msg}")]
    Parse { path: String, line: usize, column: usize, msg: String },
    #[error("{path}: {msg}")]
    Invalid { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 2 for usage and input problems, 3 for resource caps.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::CapExceeded { .. } | CoreError::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }

    pub fn hint(&self) -> Option<&'static str> {
        match self {
            CliError::Core(CoreError::CapExceeded { .. }) => Some("rerun with a larger --cap"),
            CliError::Core(CoreError::BudgetExceeded { .. }) => Some("rerun with a larger --budget"),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
