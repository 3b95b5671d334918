use std::io;
use std::path::PathBuf;

use helix_core::codec::CodebookError;
use helix_core::graph::{DimacsError, GraphError};
use helix_core::oracle::OracleError;
use helix_core::solver::SolveError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Dimacs {
        path: PathBuf,
        #[source]
        source: DimacsError,
    },
    #[error("{context}: {source}")]
    Json {
        context: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Codebook(#[from] CodebookError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 for I/O and parse failures, 2 for configuration problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Dimacs { .. } | CliError::Json { .. } => 1,
            CliError::Solve(
                SolveError::Machine(_) | SolveError::Decode { .. } | SolveError::Multiplicity(_),
            ) => 1,
            CliError::Config(_)
            | CliError::Codebook(_)
            | CliError::Graph(_)
            | CliError::Oracle(_)
            | CliError::Solve(_) => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
