use std::fmt;
use std::path::Path;

use fairagg_core::Error as CoreError;

/// A failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input, bad flags or config. Exit 2.
    Input(String),
    /// Fairness bounds admit no ranking. Exit 3.
    Infeasible(String),
    /// An oracle or enumeration size guard was exceeded. Exit 4.
    Guard(String),
    /// A checked property did not hold. Exit 1.
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Input(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Guard(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Check(_) => "check",
            CliError::Input(_) => "input",
            CliError::Infeasible(_) => "infeasible",
            CliError::Guard(_) => "guard",
        }
    }

    pub fn io(path: &Path, err: impl fmt::Display) -> Self {
        CliError::Input(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Infeasible(m) | CliError::Guard(m) | CliError::Check(m) => {
                f.write_str(m)
            }
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Infeasible | CoreError::InfeasibleBounds(_) => CliError::Infeasible(e.to_string()),
            CoreError::TooLarge { .. } | CoreError::EnumerationCapExceeded { .. } => {
                CliError::Guard(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
