//! Command-line front end and file formats for `qchsh-core`.

pub mod cli;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;
pub mod verify;

pub use error::{CliError, Result};
