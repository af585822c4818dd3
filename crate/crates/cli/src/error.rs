use thiserror::Error;

/// Failure of a CLI command, carrying the process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or arguments that can never produce a valid run.
    #[error("{0}")]
    Usage(String),
    /// Unreadable, unwritable or malformed files, or an unusable graph.
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Solver(String),
    #[error("{failed} of {total} runs failed")]
    RunsFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Solver(_) | CliError::RunsFailed { .. } => 4,
        }
    }

    pub(crate) fn io(what: impl std::fmt::Display, err: std::io::Error) -> Self {
        CliError::Input(format!("{what}: {err}"))
    }
}

impl From<qls_core::Error> for CliError {
    fn from(err: qls_core::Error) -> Self {
        use qls_core::Error as E;
        let message = err.to_string();
        match err {
            _ if err.is_solver_error() => CliError::Solver(message),
            E::InvalidProbability { .. } | E::OddN(_) | E::ConfigInvalid(_) | E::UnknownSolver(_) => {
                CliError::Usage(message)
            }
            _ => CliError::Input(message),
        }
    }
}
