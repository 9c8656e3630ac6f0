use phimod::Error;

/// Exit status 1 for mathematical rejections, 2 for bad input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Rejected(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Rejected(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(_) | Error::Structure(_) => CliError::Rejected(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
