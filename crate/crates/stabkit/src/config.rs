use std::path::PathBuf;

use stabkit_core::dense::DEFAULT_DENSE_LIMIT;
use stabkit_core::ft::check::DEFAULT_ENUMERATION_CAP;

use crate::cli::{Format, GlobalArgs};
use crate::error::CliError;

/// Environment variable overriding the dense simulation cap.
pub const DENSE_LIMIT_VAR: &str = "STABKIT_DENSE_LIMIT";

/// Settings shared by all subcommands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub jobs: usize,
    pub dense_limit: usize,
    pub enumeration_cap: u64,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0,
            jobs: 1,
            dense_limit: DEFAULT_DENSE_LIMIT,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            out: None,
            format: None,
        }
    }
}

impl RunConfig {
    /// The flag wins over the environment, which wins over the default.
    pub fn resolve(args: &GlobalArgs, dense_env: Option<&str>) -> Result<RunConfig, CliError> {
        if args.jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        let dense_limit = match (args.dense_limit, dense_env) {
            (Some(l), _) => l,
            (None, Some(v)) => v.trim().parse().map_err(|_| {
                CliError::Usage(format!("{DENSE_LIMIT_VAR} must be an integer, got {v:?}"))
            })?,
            (None, None) => DEFAULT_DENSE_LIMIT,
        };
        Ok(RunConfig {
            seed: args.seed,
            jobs: args.jobs,
            dense_limit,
            enumeration_cap: args.cap.unwrap_or(DEFAULT_ENUMERATION_CAP),
            out: args.out.clone(),
            format: args.format,
        })
    }
}
