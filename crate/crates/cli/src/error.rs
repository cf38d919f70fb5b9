use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("{0}")]
    Budget(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error(transparent)]
    Core(#[from] adf_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use adf_core::Error as E;
        match self {
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Io { .. } => 4,
            CliError::Core(E::Budget { .. } | E::DegreeCap { .. } | E::DimensionTooLarge { .. }) => 3,
            CliError::Core(_) => 2,
        }
    }

    pub fn category(&self) -> &'static str {
        match self.exit_code() {
            3 => "budget",
            4 => "io",
            _ => "validation",
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
