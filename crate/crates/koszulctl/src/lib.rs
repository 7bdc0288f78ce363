//! File formats and the command-line front end for `koszul-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod reports;

pub use crate::cli::{run, TOOL_VERSION};
pub use crate::error::{CliError, ErrorKind};
