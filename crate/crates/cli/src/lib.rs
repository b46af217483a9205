//! Command-line front end for pathcalc: argument parsing, CSV/JSON output,
//! and the acceptance suite run by `pathcalc verify`.

pub mod args;
pub mod commands;
pub mod output;
pub mod verify;

use clap::Parser;

pub use args::Cli;
pub use commands::CliError;

/// Parses `argv`, runs the command and returns the exit code: 0 on success,
/// 1 when `verify` finds a failing criterion, 2 on invalid input.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Err(e) = commands::configure_threads() {
        eprintln!("error: {e}");
        return 2;
    }
    match commands::execute(cli) {
        Ok(code) => code,
        Err(CliError::Io { source, .. }) if source.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {}", e.to_string().replace('\n', " "));
            2
        }
    }
}
