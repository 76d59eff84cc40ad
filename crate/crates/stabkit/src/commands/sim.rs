use stabkit_core::clifford::{dense_run, SimCircuit};
use stabkit_core::exrec::trial_rng;

use super::read_text;
use crate::cli::{Engine, SimCommand};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::parallel::{shards, split_range};
use crate::Output;

fn bits(outcomes: impl Iterator<Item = bool>) -> String {
    let mut s: String = outcomes.map(|b| if b { '1' } else { '0' }).collect();
    s.push('\n');
    s
}

/// Outcome bits of one shot; shot `i` always uses stream `i` of the seed.
fn shot(c: &SimCircuit, engine: Engine, cfg: &RunConfig, i: u64) -> Result<String, CliError> {
    let mut rng = trial_rng(cfg.seed, i);
    Ok(match engine {
        Engine::Tableau => {
            let (_, out) = c.run_tableau(&mut rng)?;
            bits(out.iter().map(|o| o.negative))
        }
        Engine::Dense => {
            let (_, out) = dense_run(c, cfg.dense_limit, &mut rng)?;
            bits(out.into_iter())
        }
    })
}

pub(super) fn run(cmd: &SimCommand, cfg: &RunConfig) -> Result<Output, CliError> {
    match cmd {
        SimCommand::Run {
            circuit,
            shots,
            engine,
        } => {
            let c = SimCircuit::parse(&read_text(circuit)?)?;
            if *engine == Engine::Tableau && !c.is_clifford() {
                return Err(CliError::Domain(
                    "circuit has T gates; use --engine dense".into(),
                ));
            }
            let parts = shards(cfg.jobs, |j| {
                split_range(*shots, cfg.jobs)[j]
                    .clone()
                    .map(|i| shot(&c, *engine, cfg, i))
                    .collect::<Result<String, CliError>>()
            });
            let mut body = String::new();
            for p in parts {
                body.push_str(&p?);
            }
            Ok(Output::ok(body))
        }
    }
}
