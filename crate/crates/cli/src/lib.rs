// SPDX-License-Identifier: Apache-2.0

//! Command-line front end for [`logforest`].
//!
//! [`run`] parses arguments, dispatches to one of the `cmd_*` functions and
//! maps failures to exit codes: 1 for unreadable or malformed input, 2 for
//! numerical failures and failed checks, 3 for bad flags.

pub mod args;
pub mod commands;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, DistanceKind, Format, RunConfig, Target};
pub use commands::{cmd_distances, cmd_geodetic, cmd_sweep, cmd_verify, CliError};
pub use output::format_sig;

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    commands::EXIT_USAGE
                }
            };
        }
    };

    let mut text = String::new();
    let result = match &cli.command {
        Command::Distances(a) => RunConfig::from_distances(a).map(|r| (r, cmd_distances as Handler)),
        Command::Sweep(a) => RunConfig::from_sweep(a).map(|r| (r, cmd_sweep as Handler)),
        Command::Verify(a) => RunConfig::from_verify(a).map(|r| (r, cmd_verify as Handler)),
        Command::Geodetic(a) => RunConfig::from_geodetic(a).map(|r| (r, cmd_geodetic as Handler)),
    }
    .and_then(|(run, handler)| {
        let outcome = handler(&run, &mut text);
        emit(&run, &text, stdout)?;
        outcome
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "logforest: {e}");
            e.code
        }
    }
}

type Handler = fn(&RunConfig, &mut String) -> Result<(), CliError>;

fn emit(run: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    let failed = |e: std::io::Error| CliError::usage(format!("cannot write output: {e}"));
    match &run.output {
        Some(path) => std::fs::write(path, text).map_err(failed),
        None => stdout.write_all(text.as_bytes()).map_err(failed),
    }
}
