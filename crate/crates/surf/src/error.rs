use spacelike_core::GeometryError;
use thiserror::Error;

/// Errors surfaced by the command layer, each with its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("geometry error: {0}")]
    Geometry(#[from] GeometryError),
    #[error("selftest failed: {0}")]
    SelftestFailed(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFTEST: i32 = 1;
pub const EXIT_GEOMETRY: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => EXIT_CONFIG,
            CliError::Geometry(_) => EXIT_GEOMETRY,
            CliError::SelftestFailed(_) => EXIT_SELFTEST,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}
