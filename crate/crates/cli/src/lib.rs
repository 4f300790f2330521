//! Driver behind the `sel` binary.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 input errors (flags, polynomial,
//! JSON), 3 the polynomial is not invertible (the report is still written),
//! 4 a resource guard tripped.

pub mod commands;
pub mod config;

use std::io::Write;
use std::path::Path;

use thiserror::Error;

use sel_core::algebraic::AlgebraicError;
use sel_core::groups::GroupError;
use sel_core::spectral::SpectralError;
use sel_core::subshift::SubshiftError;

pub use commands::{run, run_algebraic, run_mahler, run_sofic_check, run_subshift, Outcome};
pub use config::{Command, GroupSpec, QuotientRange, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_INVERTIBLE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("resource guard: {0}")]
    Resource(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("{0}")]
    Other(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Parse(_) | RunError::Config(_) => EXIT_INPUT,
            RunError::Resource(_) => EXIT_RESOURCE,
            RunError::Io(_) | RunError::Other(_) => EXIT_IO,
        }
    }
}

impl From<GroupError> for RunError {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::SizeGuard { .. } => RunError::Resource(e.to_string()),
            GroupError::ExponentOverflow | GroupError::CoefficientOverflow => {
                RunError::Other(e.to_string())
            }
            _ => RunError::Config(e.to_string()),
        }
    }
}

impl From<AlgebraicError> for RunError {
    fn from(e: AlgebraicError) -> Self {
        match e {
            AlgebraicError::Group(g) => g.into(),
            AlgebraicError::SizeGuard { .. } => RunError::Resource(e.to_string()),
            AlgebraicError::NotInvertible { .. } => RunError::Other(e.to_string()),
            _ => RunError::Config(e.to_string()),
        }
    }
}

impl From<SpectralError> for RunError {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::GridTooLarge { .. } | SpectralError::DegreeTooLarge(_) => {
                RunError::Resource(e.to_string())
            }
            _ => RunError::Config(e.to_string()),
        }
    }
}

impl From<SubshiftError> for RunError {
    fn from(e: SubshiftError) -> Self {
        match e {
            SubshiftError::Json { .. } | SubshiftError::Invalid(_) => {
                RunError::Parse(e.to_string())
            }
            SubshiftError::EnumerationCap { .. } => RunError::Resource(e.to_string()),
            SubshiftError::Group(g) => g.into(),
            _ => RunError::Config(e.to_string()),
        }
    }
}

/// Writes `report` to `out`, or to standard output.
pub fn write_report(report: &str, out: Option<&Path>) -> Result<(), RunError> {
    match out {
        Some(path) => std::fs::write(path, report)
            .map_err(|e| RunError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(report.as_bytes())
            .map_err(|e| RunError::Io(e.to_string())),
    }
}
