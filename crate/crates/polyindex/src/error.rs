use polyindex_core::Error;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum CliError {
    /// Unreadable or malformed input; exit code 2.
    #[error("{field}: {message}")]
    Input { field: String, message: String },
    /// The computation itself failed; exit code 1.
    #[error("{0}")]
    Compute(String),
    /// Ran to completion but some check did not hold; exit code 1.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn input(field: impl Into<String>, message: impl ToString) -> Self {
        CliError::Input { field: field.into(), message: message.to_string() }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Compute(_) | CliError::Failed(_) => 1,
        }
    }

    /// Attributes a core error to an input field when it describes bad input.
    pub fn from_core(field: &str, err: Error) -> Self {
        match err {
            Error::InvalidPolytope(_)
            | Error::Dimension { .. }
            | Error::Parameter(_)
            | Error::IrrationalCoordinates
            | Error::Parse(_)
            | Error::ZeroOperator(_)
            | Error::DegenerateSubset { .. }
            | Error::MissingSubset { .. }
            | Error::NotIncident { .. }
            | Error::Singular => CliError::input(field, err),
            _ => CliError::Compute(err.to_string()),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Compute(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
