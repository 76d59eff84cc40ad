//! Concatenation bounds, curve fits and pseudo-threshold search.

use alloc::vec::Vec;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::montecarlo::MonteCarloReport;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelReduction {
    /// `A^(-1/t)`.
    pub threshold: f64,
    /// Bound on the effective rate at levels `0..=levels`.
    pub rates: Vec<f64>,
}

/// Iterates `p ↦ A·p^(t+1)` from `p`.
pub fn level_reduction_bound(p: f64, a: f64, t: usize, levels: usize) -> Result<LevelReduction> {
    if t == 0 || !(a > 0.0) || !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain("need t >= 1, A > 0 and p in [0, 1]".into()));
    }
    let mut rates = Vec::with_capacity(levels + 1);
    let mut r = p;
    rates.push(r);
    for _ in 0..levels {
        r = a * libm::pow(r, (t + 1) as f64);
        rates.push(r);
    }
    Ok(LevelReduction {
        threshold: libm::pow(a, -1.0 / t as f64),
        rates,
    })
}

/// Fewest concatenation levels whose effective rate bound
/// `p_T·(p/p_T)^((t+1)^L)` reaches `target`.
pub fn levels_needed(target: f64, p: f64, threshold: f64, t: usize) -> Result<u32> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    if !(threshold > 0.0 && threshold <= 1.0) || !(p > 0.0) || !(target > 0.0) {
        return Err(Error::Domain(
            "rates must be positive and p_T at most 1".into(),
        ));
    }
    if p >= threshold {
        return Err(Error::ThresholdExceeded {
            p,
            p_threshold: threshold,
        });
    }
    if target >= p {
        return Ok(0);
    }
    let ratio = libm::log(target / threshold) / libm::log(p / threshold);
    let levels = libm::log(ratio) / libm::log((t + 1) as f64);
    Ok(libm::ceil(levels - 1e-12).max(0.0) as u32)
}

/// Size bound `G^L` for a circuit location simulated at level `L` when each
/// level multiplies size by at most `G`.
pub fn overhead_bound(growth: u64, levels: u32) -> BigUint {
    BigUint::from(growth).pow(levels)
}

fn sq(x: f64) -> f64 {
    x * x
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticFit {
    /// `c` in `rate ≈ c·p²`.
    pub coefficient: f64,
    /// Weighted coefficient of determination of the fixed-slope model in
    /// log space.
    pub r_squared: f64,
    /// Slope of an unconstrained weighted fit, for comparison with 2.
    pub free_slope: f64,
    pub points: usize,
}

/// Fits `rate = c·p²` in log space to the points with `p ≤ p_max` and at
/// least one failure, weighting each by its failure count.
pub fn fit_quadratic(reports: &[MonteCarloReport], p_max: f64) -> Result<QuadraticFit> {
    let pts: Vec<(f64, f64, f64)> = reports
        .iter()
        .filter(|r| r.p <= p_max && r.failures > 0 && r.p > 0.0)
        .map(|r| (libm::log(r.p), libm::log(r.failure_rate), r.failures as f64))
        .collect();
    if pts.len() < 2 {
        return Err(Error::Domain(
            "need at least two points with failures".into(),
        ));
    }
    let w: f64 = pts.iter().map(|p| p.2).sum();
    let log_c = pts
        .iter()
        .map(|&(x, y, wi)| wi * (y - 2.0 * x))
        .sum::<f64>()
        / w;
    let y_bar = pts.iter().map(|&(_, y, wi)| wi * y).sum::<f64>() / w;
    let x_bar = pts.iter().map(|&(x, _, wi)| wi * x).sum::<f64>() / w;
    let ss_res: f64 = pts
        .iter()
        .map(|&(x, y, wi)| wi * sq(y - log_c - 2.0 * x))
        .sum();
    let ss_tot: f64 = pts.iter().map(|&(_, y, wi)| wi * sq(y - y_bar)).sum();
    let sxx: f64 = pts.iter().map(|&(x, _, wi)| wi * sq(x - x_bar)).sum();
    let sxy: f64 = pts
        .iter()
        .map(|&(x, y, wi)| wi * (x - x_bar) * (y - y_bar))
        .sum();
    Ok(QuadraticFit {
        coefficient: libm::exp(log_c),
        r_squared: if ss_tot > 0.0 {
            1.0 - ss_res / ss_tot
        } else {
            0.0
        },
        free_slope: if sxx > 0.0 { sxy / sxx } else { f64::NAN },
        points: pts.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PseudoThreshold {
    pub lower: f64,
    pub upper: f64,
    /// The logical rate is significantly below `p` at `lower` and above it
    /// at `upper`.
    pub conclusive: bool,
    pub evaluations: Vec<MonteCarloReport>,
}

/// Bisects in `log p` for the crossing of the logical failure rate with
/// `p`. Stops when the interval at a midpoint contains the midpoint.
pub fn pseudo_threshold(
    mut estimate: impl FnMut(f64) -> Result<MonteCarloReport>,
    lo: f64,
    hi: f64,
    iterations: usize,
) -> Result<PseudoThreshold> {
    if !(lo > 0.0 && hi > lo && hi <= 1.0) {
        return Err(Error::Domain("need 0 < lo < hi <= 1".into()));
    }
    let below = |r: &MonteCarloReport| r.wilson_95_interval.1 < r.p;
    let above = |r: &MonteCarloReport| r.wilson_95_interval.0 > r.p;
    let (mut lo, mut hi) = (lo, hi);
    let r_lo = estimate(lo)?;
    let r_hi = estimate(hi)?;
    let conclusive = below(&r_lo) && above(&r_hi);
    let mut evaluations = alloc::vec![r_lo, r_hi];
    if conclusive {
        for _ in 0..iterations {
            let mid = libm::sqrt(lo * hi);
            let r = estimate(mid)?;
            let (b, a) = (below(&r), above(&r));
            evaluations.push(r);
            if b {
                lo = mid;
            } else if a {
                hi = mid;
            } else {
                break;
            }
        }
    }
    Ok(PseudoThreshold {
        lower: lo,
        upper: hi,
        conclusive,
        evaluations,
    })
}
