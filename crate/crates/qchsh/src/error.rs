use thiserror::Error;

/// Front-end failure, mapped onto the process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed arguments or input files.
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{0}")]
    Core(#[from] qchsh_core::Error),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 for invalid input, 2 for numerical or convergence failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => 1,
            CliError::Core(e) if e.is_numerical() => 2,
            CliError::Core(_) => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
