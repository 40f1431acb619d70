use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read dump directory {}: {source}", path.display())]
    Root { path: PathBuf, source: io::Error },
}

#[derive(Debug, Error)]
pub enum StoreFileError {
    #[error("not a store file (bad magic header)")]
    NotAStore,
    #[error("store format version {found} is not supported (expected {expected})")]
    UnsupportedVersion { found: u8, expected: u8 },
    #[error("store file is truncated")]
    Truncated,
    #[error("store file is corrupt: {0}")]
    Corrupt(&'static str),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Command-line failure, carrying the exit code to report.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad or missing arguments, unreadable inputs: exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Ingest(#[from] IngestError),
    #[error("{context}: {source}")]
    Store { context: String, source: StoreFileError },
    #[error("{context}: {source}")]
    Io { context: String, source: io::Error },
    #[error(transparent)]
    Core(#[from] oagraph_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Ingest(_) => 2,
            CliError::Store { source: StoreFileError::Io(e), .. } if e.kind() == io::ErrorKind::NotFound => 2,
            _ => 1,
        }
    }

    pub fn io(context: impl Into<String>) -> impl FnOnce(io::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Io { context, source }
    }
}
