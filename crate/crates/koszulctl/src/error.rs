use std::fmt;
use std::path::Path;

use koszul_core::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Io,
    Schema,
    DegreeCap,
    Input,
}

impl ErrorKind {
    pub fn prefix(self) -> &'static str {
        match self {
            ErrorKind::Io => "error[io]",
            ErrorKind::Schema => "error[schema]",
            ErrorKind::DegreeCap => "error[degree-cap]",
            ErrorKind::Input => "error[input]",
        }
    }
}

/// Malformed input of some kind. Always exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: String) -> Self {
        CliError { kind, message }
    }

    pub fn io(path: &Path, err: &std::io::Error) -> Self {
        Self::new(ErrorKind::Io, format!("{}: {err}", path.display()))
    }

    pub fn schema(message: String) -> Self {
        Self::new(ErrorKind::Schema, message)
    }

    pub fn input(message: String) -> Self {
        Self::new(ErrorKind::Input, message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::DegreeCap { .. } | Error::AmbientTooLarge { .. } => ErrorKind::DegreeCap,
            Error::DimensionMismatch { .. } | Error::IndexOutOfRange { .. } | Error::InvalidComodule(_) => {
                ErrorKind::Schema
            }
            _ => ErrorKind::Input,
        };
        CliError::new(kind, e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.prefix(), self.message)
    }
}

impl std::error::Error for CliError {}
