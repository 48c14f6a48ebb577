use thiserror::Error;

use tqft_core::Error as CoreError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECKS_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_CONFIG: u8 = 4;
pub const EXIT_COMPUTE: u8 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("computation failed: {0}")]
    Compute(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
            CliError::Compute(_) => EXIT_COMPUTE,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidLevel(_)
            | CoreError::InvalidRootExponent { .. }
            | CoreError::InvalidColor { .. }
            | CoreError::NotPrime(_)
            | CoreError::Ramified { .. }
            | CoreError::BadPrime { .. }
            | CoreError::ModulusIndex { .. }
            | CoreError::UnknownName(_)
            | CoreError::Unsupported(_)
            | CoreError::DenominatorNotCoprime { .. } => CliError::Config(e.to_string()),
            other => CliError::Compute(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
