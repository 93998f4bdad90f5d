//! Command-line front end for the reliability-polynomial library.
//!
//! Exit codes: 0 success, 1 domain error (bad graph, divergent iteration,
//! exhausted search), 2 usage error (bad flags or flag combinations).

pub mod args;
pub mod cache;
pub mod commands;
pub mod enumerate;
pub mod gio;
pub mod graph6;
pub mod svg;

use clap::Parser;
use std::ffi::OsString;

/// Error type distinguishing the two nonzero exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Flag combinations or values the parser cannot catch (exit 2).
    Usage(String),
    /// Well-formed requests that fail on their input (exit 1).
    Domain(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain(e.into())
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub(crate) fn domain(err: anyhow::Error) -> CliError {
    CliError::Domain(err)
}

/// Parse `argv` and run the selected command, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match commands::dispatch(cli) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
        Err(CliError::Domain(err)) => {
            eprintln!("error: {err:#}");
            1
        }
    }
}
