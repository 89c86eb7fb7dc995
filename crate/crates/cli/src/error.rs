use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: unknown key, unparsable value, inconsistent options.
    #[error("usage error: {0}")]
    Usage(String),
    /// The scenario violates a physical constraint.
    #[error("constraint failure: {0}")]
    Constraint(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn usage(key: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Usage(format!("`{key}`: {msg}"))
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Constraint(_) => 1,
            CliError::Io(_) => 1,
        }
    }
}

impl From<lindblad_osc::Error> for CliError {
    fn from(e: lindblad_osc::Error) -> Self {
        CliError::Constraint(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
