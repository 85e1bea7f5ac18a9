use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad user input; the message names the offending field.
    #[error("{field}: {message}")]
    Validation { field: String, message: String },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn validation(field: impl Into<String>, message: impl ToString) -> Self {
        CliError::Validation { field: field.into(), message: message.to_string() }
    }

    pub fn io(context: impl Into<String>, source: io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation { .. } => 2,
            CliError::Io { .. } | CliError::Internal(_) => 1,
        }
    }
}
