use chibound_core::Error;

/// Failures that end a command without a certificate, with their exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("budget error: {0}")]
    Budget(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Internal(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::VertexOutOfRange { .. } | Error::Input(_) => CliError::Input(e.to_string()),
            Error::Budget(_) | Error::SizeGuard { .. } => CliError::Budget(e.to_string()),
            Error::NotInClass { .. } | Error::TheoremViolation(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
