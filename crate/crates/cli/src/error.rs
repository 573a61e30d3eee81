use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] isogeo::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Config { path: PathBuf, source: serde_json::Error },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core(isogeo::Error::InternalInconsistency(_)) => crate::EXIT_FAIL,
            Self::Invalid(_) | Self::Core(_) | Self::Config { .. } => crate::EXIT_INVALID,
            Self::Io { .. } => crate::EXIT_IO,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
