use std::io;

use serde::Serialize;

use crate::gfn::GfnError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] hypfl_core::Error),
    #[error(transparent)]
    Gfn(#[from] GfnError),
    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

/// Machine-readable error written to standard error.
#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub error: &'static str,
    pub message: String,
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.name(),
            CliError::Gfn(e) => e.name(),
            CliError::Json { .. } => "InvalidJson",
            CliError::Io { .. } => "IoError",
            CliError::Csv(_) => "CsvError",
            CliError::Usage(_) => "UsageError",
        }
    }

    /// `1` for numerical hypothesis violations, `2` for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_numerical() => 1,
            _ => 2,
        }
    }

    pub fn report(&self) -> ErrorReport {
        ErrorReport {
            error: self.name(),
            message: self.to_string(),
        }
    }

    pub fn io(path: impl std::fmt::Display, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_string(),
            source,
        }
    }

    pub fn json(path: impl std::fmt::Display, source: serde_json::Error) -> Self {
        CliError::Json {
            path: path.to_string(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let e = CliError::from(hypfl_core::Error::RootCollision {
            k: [1.0, 0.0],
            gap: 0.0,
            threshold: 1e-3,
        });
        assert_eq!((e.exit_code(), e.name()), (1, "RootCollision"));
        let e = CliError::from(hypfl_core::Error::InvalidGridSize(12));
        assert_eq!(e.exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
    }
}
