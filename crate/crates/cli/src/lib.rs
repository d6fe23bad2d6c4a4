//! File formats, JSON reports and command implementations behind the
//! `hurwitz` binary.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{CliError, Outcome, Settings, EXIT_ERROR};
