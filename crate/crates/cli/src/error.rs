use std::path::PathBuf;

use gasket_fif::fractal::FractalError;
use gasket_fif::{GasketError, ParseError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse {what}: {source}")]
    Expr {
        what: &'static str,
        #[source]
        source: ParseError,
    },
    #[error("bad address: {0}")]
    Address(#[from] GasketError),
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write PNG {path}: {message}")]
    Render { path: PathBuf, message: String },
}

impl CliError {
    /// 2: bad input text, 3: rejected problem, 4: file system.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Expr { .. } | CliError::Address(_) => 2,
            CliError::Invalid(_) => 3,
            CliError::Io { .. } | CliError::Render { .. } => 4,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<FractalError> for CliError {
    fn from(e: FractalError) -> Self {
        match e {
            FractalError::DepthTooLarge { depth, max } => {
                CliError::Invalid(format!("depth exceeds {max} (requested {depth})"))
            }
            FractalError::Gasket(GasketError::DepthTooLarge(depth)) => CliError::Invalid(format!(
                "depth exceeds {} (requested {depth})",
                gasket_fif::gasket::MAX_DEPTH
            )),
            other => CliError::Invalid(other.to_string()),
        }
    }
}
