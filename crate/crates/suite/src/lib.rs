//! Command-line verification suite for the trace of `T2` on level-one cusp
//! forms: configuration, report emission and the staged pipeline.

pub mod cli;
pub mod config;
pub mod pipeline;
pub mod report;

pub use config::{Config, ConfigFile, Format};
pub use pipeline::run_pipeline;
pub use report::{Output, Status, VerificationReport};

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hecke_trace_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Process exit codes.
pub mod exit {
    pub const VERIFIED: u8 = 0;
    pub const CLAIM_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
}
