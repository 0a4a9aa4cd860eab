use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFICATION_FAILED: u8 = 1;
    pub const INVALID: u8 = 2;
    pub const MISSING_SINGLET: u8 = 3;
}

#[derive(Debug, Error)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
    pub exit_code: u8,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

#[derive(Serialize)]
struct Record<'a> {
    error: RecordBody<'a>,
}

#[derive(Serialize)]
struct RecordBody<'a> {
    code: &'a str,
    message: &'a str,
    exit_code: u8,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: "usage",
            message: message.into(),
            exit_code: exit::INVALID,
        }
    }

    pub fn missing_singlet(message: impl Into<String>) -> Self {
        Self {
            code: "missing_singlet",
            message: message.into(),
            exit_code: exit::MISSING_SINGLET,
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: "io",
            message: message.into(),
            exit_code: exit::INVALID,
        }
    }

    pub fn from_clap(err: clap::Error) -> Self {
        Self {
            code: "usage",
            message: err.to_string().trim_end().to_string(),
            exit_code: exit::INVALID,
        }
    }

    /// One-line JSON error record.
    pub fn record(&self) -> String {
        serde_json::to_string(&Record {
            error: RecordBody {
                code: self.code,
                message: &self.message,
                exit_code: self.exit_code,
            },
        })
        .expect("error records serialize")
    }
}

impl From<dirac_susy::Error> for CliError {
    fn from(e: dirac_susy::Error) -> Self {
        Self {
            code: e.code(),
            message: e.to_string(),
            exit_code: exit::INVALID,
        }
    }
}
