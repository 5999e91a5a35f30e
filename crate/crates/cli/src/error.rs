use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("{context}: {source}")]
    Core { context: String, source: benford_core::Error },

    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("invalid JSON input at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
}

impl CliError {
    pub fn core(context: impl Into<String>, source: benford_core::Error) -> Self {
        CliError::Core { context: context.into(), source }
    }

    /// 2 for bad input or requests, 3 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        use benford_core::Error as E;
        match self {
            CliError::Core {
                source:
                    E::Reducible
                    | E::NoSignChange { .. }
                    | E::OutOfRegime(_)
                    | E::NonConvergence { .. }
                    | E::NonPositive
                    | E::UnknownRhoStructure
                    | E::UnitRoot,
                ..
            } => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
