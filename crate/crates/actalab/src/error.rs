use std::path::PathBuf;

use thiserror::Error;

/// Everything that ends a command with exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("{flag}: {message}")]
    Usage { flag: &'static str, message: String },
    #[error("work estimate {estimate} cells ({detail}) exceeds ACTALAB_MAX_CELLS = {cap}")]
    TooLarge { estimate: u128, cap: u128, detail: String },
}

impl CliError {
    pub fn usage(flag: &'static str, message: impl Into<String>) -> CliError {
        CliError::Usage {
            flag,
            message: message.into(),
        }
    }
}
