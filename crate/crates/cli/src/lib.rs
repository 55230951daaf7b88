//! Library side of the `bjorling` command: job configs, the example
//! registry, reports and the verification checks.

pub mod checks;
pub mod commands;
pub mod config;
pub mod registry;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("math error: {0}")]
    Math(String),
    #[error("unknown example '{0}' (try `examples list`)")]
    UnknownExample(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::ChecksFailed(_) => 1,
            CliError::Config(_) | CliError::UnknownExample(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}
