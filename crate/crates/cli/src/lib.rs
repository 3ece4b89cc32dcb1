//! Library side of the `qtemp` command-line tool.

pub mod error;
pub mod input;
pub mod report;
pub mod sweep;
pub mod verify;

pub use error::{CliError, ExitCode};
