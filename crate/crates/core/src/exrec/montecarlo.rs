//! Monte Carlo estimates of logical failure rates.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::noise::{NoiseModel, NoisySource};
use super::protocol::Protocol;
use crate::error::{Error, Result};
use crate::ft::FrameSimulator;

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959963984540054;

/// Wilson score interval for `failures` out of `trials`.
pub fn wilson_interval(failures: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z * libm::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
    let lo = if failures == 0 {
        0.0
    } else {
        (center - half).max(0.0)
    };
    let hi = if failures >= trials {
        1.0
    } else {
        (center + half).min(1.0)
    };
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub failure_rate: f64,
    pub wilson_95_interval: (f64, f64),
    pub seed: u64,
}

impl MonteCarloReport {
    pub fn new(p: f64, trials: u64, failures: u64, seed: u64) -> Self {
        MonteCarloReport {
            p,
            trials,
            failures,
            failure_rate: if trials == 0 {
                0.0
            } else {
                failures as f64 / trials as f64
            },
            wilson_95_interval: wilson_interval(failures, trials, Z_95),
            seed,
        }
    }
}

/// The generator for one trial; independent of how trials are split
/// across workers.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Failure counts at every strength of `grid` over the given trial range.
/// Each trial draws one nested fault configuration shared by all
/// strengths.
pub fn count_failures(
    protocol: &Protocol,
    noise: &NoiseModel,
    grid: &[f64],
    seed: u64,
    trials: Range<u64>,
) -> Result<Vec<u64>> {
    if grid.is_empty() {
        return Err(Error::Domain("empty strength grid".into()));
    }
    let models = grid
        .iter()
        .map(|&p| noise.with_p(p))
        .collect::<Result<Vec<_>>>()?;
    let p_max = grid.iter().copied().fold(0.0, f64::max);
    let circuit = &protocol.encoded;
    let sim = FrameSimulator::new(circuit);
    let mut failures = vec![0u64; grid.len()];
    for trial in trials {
        let mut rng = trial_rng(seed, trial);
        let candidates = noise.sample_candidates(circuit, p_max, &mut rng);
        if candidates.is_empty() {
            continue;
        }
        for (j, model) in models.iter().enumerate() {
            let faults = model.faults_at(circuit, &candidates);
            if faults.is_empty() {
                continue;
            }
            let mut source = NoisySource::new(circuit, model, &faults, rng.clone());
            if protocol.failed(&sim.run(None, &mut source)) {
                failures[j] += 1;
            }
        }
    }
    Ok(failures)
}

/// Failure rate of the protocol under `noise`.
pub fn simulate_protocol(
    protocol: &Protocol,
    noise: &NoiseModel,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloReport> {
    let f = count_failures(protocol, noise, &[noise.p()], seed, 0..trials)?;
    Ok(MonteCarloReport::new(noise.p(), trials, f[0], seed))
}

/// `points` strengths spaced evenly in log scale from `lo` to `hi`.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi >= lo && points >= 1) || (points == 1 && lo != hi) {
        return Err(Error::Domain(
            "log grid needs 0 < lo <= hi and at least one point".into(),
        ));
    }
    if points == 1 {
        return Ok(vec![lo]);
    }
    let (a, b) = (libm::log(lo), libm::log(hi));
    Ok((0..points)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == points - 1 {
                hi
            } else {
                libm::exp(a + (b - a) * i as f64 / (points - 1) as f64)
            }
        })
        .collect())
}
