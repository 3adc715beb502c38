//! Command-line front end: ideal parsing, JSON reports, SVG plots and the
//! lattice-count verification harness.

pub mod commands;
pub mod error;
pub mod parse;
pub mod plot;
pub mod report;

use std::io::Read;

use clap::Parser;

pub use commands::Cli;
pub use error::CliError;

/// What a finished invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation. `args` includes the program name; `stdin` is read only
/// when the command needs an ideal and none was given on the command line.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let rendered = e.to_string();
                    let first = rendered.lines().next().unwrap_or_default();
                    let err = CliError::Usage(first.trim_start_matches("error: ").to_string());
                    Outcome {
                        code: err.exit_code(),
                        stdout: err.to_json() + "\n",
                        stderr: e.to_string(),
                    }
                }
            };
        }
    };
    match commands::execute(&cli, stdin) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(err) => Outcome {
            code: err.exit_code(),
            stdout: err.to_json() + "\n",
            stderr: String::new(),
        },
    }
}
