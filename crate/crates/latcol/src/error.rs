use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error(transparent)]
    Core(#[from] latcol_core::Error),
    #[error("node budget of {budget} exhausted during {stage}")]
    BudgetExhausted { stage: String, budget: u64 },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no record with certificate {0}")]
    UnknownRecord(String),
}

impl CatalogError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CatalogError::Io { path: path.into(), source }
    }

    /// Wraps budget exhaustion from the core with the stage that ran out.
    pub(crate) fn at_stage(err: latcol_core::Error, stage: &str) -> Self {
        match err {
            latcol_core::Error::NodeBudgetExceeded { budget } => {
                CatalogError::BudgetExhausted { stage: stage.to_string(), budget }
            }
            other => CatalogError::Core(other),
        }
    }
}

pub type Result<T, E = CatalogError> = std::result::Result<T, E>;
