use std::io;
use std::path::PathBuf;

use srdct::TransformError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error("write failed: {0}")]
    Output(#[from] io::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    /// 1 for a failed check, 2 for bad usage or I/O.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
