use thiserror::Error;

use crate::angle::AngleParseError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NOT_ASSERTED: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Angle(#[from] AngleParseError),

    #[error(transparent)]
    Core(#[from] conevol_core::Error),

    #[error("{0}")]
    Usage(String),

    #[error("verification failed with {0} failure(s)")]
    VerificationFailed(usize),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(conevol_core::Error::NotAsserted { .. }) => EXIT_NOT_ASSERTED,
            CliError::VerificationFailed(_) => EXIT_VERIFY_FAILED,
            _ => EXIT_INVALID,
        }
    }
}
