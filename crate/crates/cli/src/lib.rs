//! Command-line front end for the Mahler-system workbench: the `msys/1`
//! system-file format, command dispatch and the `mahler-report/1` report.

pub mod catalog;
mod commands;
pub mod file;
pub mod report;

use thiserror::Error;

pub use commands::{run_command, Command, Options, COMMANDS};
pub use file::{parse_system_file, print_system_file, SystemFile};
pub use report::{Report, Status, REPORT_FORMAT};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CliError {
    #[error("line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: dimension mismatch: {msg}")]
    Dimension { line: usize, col: usize, msg: String },
    #[error("undefined reference: {0}")]
    Undefined(String),
    #[error("line {line}: {msg}")]
    Invalid { line: usize, msg: String },
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] mahler_core::Error),
}

impl CliError {
    /// Exit status: bound exhaustion inside the algorithms is "unknown",
    /// everything else is an input error.
    pub fn status(&self) -> Status {
        match self {
            CliError::Core(
                mahler_core::Error::Precision(_) | mahler_core::Error::Resonance { .. } | mahler_core::Error::DegreeGrowth(_),
            ) => Status::Unknown,
            _ => Status::InputError,
        }
    }
}
