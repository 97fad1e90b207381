use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, files or parameter values.
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] jacobi_zak::Error),
}

impl CliError {
    /// 2 for input and validation problems, 3 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) if e.is_numerical() => 3,
            CliError::Core(_) => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
