use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] fpknot_core::Error),

    #[error("{0}")]
    Input(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("exceeds limit {0}")]
    Limit(usize),

    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Limit(_) | CliError::Core(fpknot_core::Error::Overflow { .. }) => 3,
            CliError::Core(fpknot_core::Error::ArithmeticOverflow(_)) => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

pub mod exit {
    use super::ExitCode;

    pub const OK: u8 = 0;
    pub const CHECK_FAILED: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const LIMIT: u8 = 3;

    pub fn code(c: u8) -> ExitCode {
        ExitCode::from(c)
    }
}
