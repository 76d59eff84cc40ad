//! Command-line front end of the stabkit toolkit.
//!
//! [`run`] parses arguments, dispatches to the `code`, `css`, `sim` and
//! `ft` command families and returns the process exit status: 0 on
//! success, 1 when the toolkit rejects the input or a check fails, 2 on a
//! malformed invocation.

pub mod cli;
pub mod commands;
pub mod config;
pub mod emit;
pub mod error;
pub mod parallel;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use cli::Cli;
pub use config::{RunConfig, DENSE_LIMIT_VAR};
pub use error::CliError;

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    /// `Some(reason)` when the command ran but its verdict is negative.
    pub failure: Option<String>,
}

impl Output {
    pub fn ok(body: String) -> Self {
        Output {
            body,
            failure: None,
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    let env = std::env::var(DENSE_LIMIT_VAR).ok();
    let result = RunConfig::resolve(&cli.global, env.as_deref())
        .and_then(|cfg| commands::dispatch(&cli.command, &cfg).map(|o| (cfg, o)))
        .and_then(|(cfg, out)| {
            match &cfg.out {
                Some(path) => std::fs::write(path, &out.body)?,
                None => stdout.write_all(out.body.as_bytes())?,
            }
            Ok(out.failure)
        });
    match result {
        Ok(None) => 0,
        Ok(Some(reason)) => {
            let _ = writeln!(stderr, "{reason}");
            1
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
