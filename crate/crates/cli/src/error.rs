use deco_core::DecoError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("numerical error: {0}")]
    Numeric(String),

    #[error("truncation check failed: top-level population {indicator:e} (limit {limit:e})")]
    Truncation { indicator: f64, limit: f64 },

    #[error("I/O error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Truncation { .. } => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl From<DecoError> for CliError {
    fn from(e: DecoError) -> Self {
        match e {
            DecoError::Truncation { indicator, limit } => CliError::Truncation { indicator, limit },
            DecoError::InvalidParams(_) | DecoError::NotNormalized { .. } | DecoError::DimensionTooLarge { .. } => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
