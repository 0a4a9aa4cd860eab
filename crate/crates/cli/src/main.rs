use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let argv: Vec<_> = std::env::args_os().collect();
    // Help and version go through clap's own printer.
    if let Err(e) = dirac_susy_cli::args::Cli::try_parse_from(&argv) {
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
            e.exit();
        }
    }
    match dirac_susy_cli::run(argv) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code)
        }
    }
}
