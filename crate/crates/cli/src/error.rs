use std::path::PathBuf;

use thiserror::Error;

/// Everything the command line can fail with, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("offline, no fixture for {0}")]
    Offline(String),

    #[error("network: {0}")]
    Network(String),

    #[error("b-file line {line}: {message}")]
    BFileParse { line: usize, message: String },

    #[error("{0}")]
    CheckFailed(String),

    #[error(transparent)]
    Core(#[from] pascalmod::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 0 success, 1 check failure, 2 usage, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Usage(_) | CliError::Core(_) => 2,
            CliError::Io { .. }
            | CliError::Offline(_)
            | CliError::Network(_)
            | CliError::BFileParse { .. } => 3,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
