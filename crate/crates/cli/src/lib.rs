//! Command-line front end for `qlr-core`.
//!
//! Reports go to stdout as JSON (or CSV for sweeps); diagnostics go to stderr.

pub mod args;
pub mod commands;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use commands::Output;

/// Parses `argv` and runs the command. Never exits the process.
pub fn run<I, T>(argv: I) -> (Output, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (Output { code: 0, stdout: text }, String::new()),
                // usage errors are input errors
                _ => (
                    Output {
                        code: commands::EXIT_INPUT,
                        stdout: String::new(),
                    },
                    text,
                ),
            };
        }
    };
    match commands::execute(&cli) {
        Ok(out) => (out, String::new()),
        Err(e) => (
            Output {
                code: commands::exit_code(&e),
                stdout: String::new(),
            },
            format!("error: {e:#}\n"),
        ),
    }
}
