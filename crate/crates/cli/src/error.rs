use std::fmt;

/// Failure of a subcommand, carrying its process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags, malformed input files, invalid parameters.
    Usage(String),
    Io(String),
    /// A checked relation did not hold.
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
            CliError::Violation(msg) => write!(f, "violation: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<quantumness::Error> for CliError {
    fn from(e: quantumness::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
