//! Command-line frontend: spectra, sampled spinors and verification reports.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod verify;

use std::ffi::OsString;

use args::Command;
use error::{exit, CliError};

/// Runs one invocation and returns the process exit code; errors carry their own.
pub fn run(argv: Vec<OsString>) -> Result<u8, CliError> {
    let cli = args::parse(argv)?;
    match cli.command {
        Command::Spectrum(a) => {
            commands::spectrum(&a)?.emit(a.output.format, a.output.output.as_deref())?;
            Ok(exit::OK)
        }
        Command::Wavefunction(a) => {
            commands::wavefunction(&a)?.emit(a.output.format, a.output.output.as_deref())?;
            Ok(exit::OK)
        }
        Command::Verify(a) => {
            let checks = verify::run(a.suite);
            verify::report(a.suite, &checks).emit(a.output.format, a.output.output.as_deref())?;
            let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
            for c in &failed {
                eprintln!(
                    "FAILED {}/{}: measured {} {} {} {}",
                    c.suite,
                    c.name,
                    output::float(c.measured),
                    c.relation_symbol(),
                    output::float(c.bound),
                    c.detail
                );
            }
            Ok(if failed.is_empty() { exit::OK } else { exit::VERIFICATION_FAILED })
        }
    }
}
