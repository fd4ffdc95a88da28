use std::path::{Path, PathBuf};
use std::process::ExitCode;

pub mod code {
    pub const OK: u8 = 0;
    pub const DOMAIN: u8 = 1;
    pub const IO: u8 = 2;
    pub const COUNTEREXAMPLE: u8 = 3;
    pub const USAGE: u8 = 64;
    pub const PARSE: u8 = 65;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] simplex_ball::Error),
    #[error("{0}")]
    Mismatch(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("writing output: {0}")]
    Output(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Self::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn parse(path: &Path, message: impl ToString) -> Self {
        Self::Parse {
            path: path.to_path_buf(),
            message: message.to_string(),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Self::Domain(_) | Self::Mismatch(_) => code::DOMAIN,
            Self::Io { .. } | Self::Output(_) => code::IO,
            Self::Usage(_) => code::USAGE,
            Self::Parse { .. } => code::PARSE,
        })
    }
}

pub type CliResult<T> = Result<T, CliError>;
