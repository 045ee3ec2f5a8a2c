use std::fmt::Display;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("stage {stage} failed: {message}")]
    Stage { stage: String, message: String },
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Usage(_) => 64,
            CliError::Stage { .. } | CliError::Io { .. } => 70,
        }
    }

    pub fn stage(stage: impl Into<String>, e: impl Display) -> Self {
        CliError::Stage { stage: stage.into(), message: e.to_string() }
    }

    pub fn io(path: impl Display, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_string(), source }
    }
}

/// Tags a result's error with a stage name.
pub trait StageExt<T> {
    fn stage(self, stage: &str) -> Result<T, CliError>;
}

impl<T, E: Display> StageExt<T> for Result<T, E> {
    fn stage(self, stage: &str) -> Result<T, CliError> {
        self.map_err(|e| CliError::stage(stage, e))
    }
}
