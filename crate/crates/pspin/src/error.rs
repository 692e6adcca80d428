use thiserror::Error;

/// Crate-wide error type. The CLI maps variants onto exit codes:
/// config errors -> 2, numerical blow-up -> 3, resource caps -> 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("numerical blow-up at t = {t} (dt = {dt}); reduce dt")]
    BlowUp { t: f64, dt: f64 },

    #[error("memory cap exceeded: run needs ~{required} bytes, cap is {cap}")]
    MemoryCap { required: u64, cap: u64 },

    #[error("fit ill-posed: {0}")]
    FitIllPosed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Contract(_) | Error::FitIllPosed(_) => 2,
            Error::BlowUp { .. } => 3,
            Error::MemoryCap { .. } => 4,
            Error::Io(_) | Error::Json(_) => 1,
        }
    }
}
