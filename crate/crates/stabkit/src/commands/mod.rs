//! Subcommand implementations. Each returns the full output text so the
//! caller decides where it goes.

mod code;
mod ft;
mod sim;

use std::path::Path;

use stabkit_core::codes::{parse_code, BundledCode};
use stabkit_core::StabilizerCode;

pub use ft::{build_exrec, parse_grid, parse_trials, resolve_gadget, sweep};

use crate::cli::{CodeSource, Command};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::Output;

pub fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Output, CliError> {
    match command {
        Command::Code(c) => code::run(c, cfg),
        Command::Css(c) => code::run_css(c),
        Command::Sim(c) => sim::run(c, cfg),
        Command::Ft(c) => ft::run(c, cfg),
    }
}

pub(crate) fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", path.display())))
}

/// A bundled code by name or alias.
pub fn bundled_code(name: &str) -> Result<StabilizerCode, CliError> {
    BundledCode::from_name(name)
        .map(BundledCode::code)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "unknown code {name:?}; bundled codes are five_qubit, seven_qubit, nine_qubit"
            ))
        })
}

pub(crate) fn load_code(source: &CodeSource) -> Result<StabilizerCode, CliError> {
    match (&source.code, &source.file) {
        (Some(name), _) => bundled_code(name),
        (None, Some(path)) => {
            let name = path
                .file_stem()
                .map_or_else(|| "code".into(), |s| s.to_string_lossy().into_owned());
            Ok(parse_code(&read_text(path)?, &name)?)
        }
        (None, None) => Err(CliError::Usage("give --code or --file".into())),
    }
}
