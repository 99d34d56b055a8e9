use thiserror::Error;

/// Failures that end a command before it produces output.
///
/// Exit codes: 2 for usage and parse errors, 3 for inputs that parse but
/// break a distribution or tree invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    /// Bad flags, unreadable files, or an input in the wrong mode.
    #[error("{0}")]
    Usage(String),
    /// Malformed file contents.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    /// Well-formed input that is not a valid distribution or tree.
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Validation(_) => 3,
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }
}
