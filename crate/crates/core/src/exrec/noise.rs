//! Stochastic Pauli noise on circuit locations.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ft::circuit::{Circuit, LocationKind};
use crate::ft::frame::{FaultCode, FaultSource};

/// Rate multipliers per location kind, relative to the model's `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KindRates {
    pub prep: f64,
    pub gate1: f64,
    pub gate2: f64,
    pub measure: f64,
    pub wait: f64,
}

impl KindRates {
    pub const UNIFORM: KindRates = KindRates {
        prep: 1.0,
        gate1: 1.0,
        gate2: 1.0,
        measure: 1.0,
        wait: 1.0,
    };

    pub fn get(&self, kind: LocationKind) -> f64 {
        match kind {
            LocationKind::Prep(_) => self.prep,
            LocationKind::Gate1(_) => self.gate1,
            LocationKind::Gate2(_) => self.gate2,
            LocationKind::Measure(_) => self.measure,
            LocationKind::Wait => self.wait,
        }
    }

    fn max(&self) -> f64 {
        [self.prep, self.gate1, self.gate2, self.measure, self.wait]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Chooses the Paulis at a set of faulty locations (sorted ids); a zero
/// code leaves that location clean.
pub type Adversary = Arc<dyn Fn(&Circuit, &[usize]) -> Vec<FaultCode> + Send + Sync>;

/// Independent faults: each location is faulty with a kind-dependent
/// probability, and the Pauli is then drawn from a fixed distribution or
/// chosen by an adversary.
#[derive(Clone)]
pub enum NoiseModel {
    /// Rate `p` everywhere, Pauli uniform over the 3 or 15 non-identity ones.
    Depolarizing { p: f64 },
    /// Rate `p·relative(kind)`; Paulis drawn with the given weights
    /// (indexed by fault code minus one).
    Uncorrelated {
        p: f64,
        relative: KindRates,
        one_qubit: [f64; 3],
        two_qubit: [f64; 15],
    },
    /// Rate `p` everywhere, Paulis chosen by the adversary.
    Adversarial { p: f64, adversary: Adversary },
}

impl fmt::Debug for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseModel::Depolarizing { p } => f.debug_struct("Depolarizing").field("p", p).finish(),
            NoiseModel::Uncorrelated {
                p,
                relative,
                one_qubit,
                two_qubit,
            } => f
                .debug_struct("Uncorrelated")
                .field("p", p)
                .field("relative", relative)
                .field("one_qubit", one_qubit)
                .field("two_qubit", two_qubit)
                .finish(),
            NoiseModel::Adversarial { p, .. } => f
                .debug_struct("Adversarial")
                .field("p", p)
                .finish_non_exhaustive(),
        }
    }
}

/// A location that is faulty at every `p` above `level`, with its Pauli.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate {
    pub location: usize,
    pub level: f64,
    pub code: FaultCode,
}

fn check_probability(p: f64) -> Result<()> {
    if !(p.is_finite() && (0.0..=1.0).contains(&p)) {
        return Err(Error::Domain(alloc::format!(
            "probability {p} is outside [0, 1]"
        )));
    }
    Ok(())
}

fn draw_weighted<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> FaultCode {
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (i, &w) in weights.iter().enumerate() {
        if u < w {
            return (i + 1) as FaultCode;
        }
        u -= w;
    }
    weights
        .iter()
        .rposition(|&w| w > 0.0)
        .map_or(1, |i| (i + 1) as FaultCode)
}

impl NoiseModel {
    pub fn depolarizing(p: f64) -> Result<Self> {
        check_probability(p)?;
        Ok(NoiseModel::Depolarizing { p })
    }

    pub fn p(&self) -> f64 {
        match self {
            NoiseModel::Depolarizing { p }
            | NoiseModel::Uncorrelated { p, .. }
            | NoiseModel::Adversarial { p, .. } => *p,
        }
    }

    /// The same model family at another strength.
    pub fn with_p(&self, p: f64) -> Result<Self> {
        check_probability(p)?;
        let mut m = self.clone();
        match &mut m {
            NoiseModel::Depolarizing { p: q }
            | NoiseModel::Uncorrelated { p: q, .. }
            | NoiseModel::Adversarial { p: q, .. } => *q = p,
        }
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability(self.p())?;
        if let NoiseModel::Uncorrelated {
            relative,
            one_qubit,
            two_qubit,
            ..
        } = self
        {
            let rates = [
                relative.prep,
                relative.gate1,
                relative.gate2,
                relative.measure,
                relative.wait,
            ];
            if rates.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
                return Err(Error::Domain(
                    "relative rates must be finite and non-negative".into(),
                ));
            }
            for w in [&one_qubit[..], &two_qubit[..]] {
                if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) || w.iter().sum::<f64>() <= 0.0 {
                    return Err(Error::Domain(
                        "Pauli weights must be non-negative with a positive sum".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn relative(&self, kind: LocationKind) -> f64 {
        match self {
            NoiseModel::Uncorrelated { relative, .. } => relative.get(kind),
            _ => 1.0,
        }
    }

    fn max_relative(&self) -> f64 {
        match self {
            NoiseModel::Uncorrelated { relative, .. } => relative.max(),
            _ => 1.0,
        }
    }

    /// Fault probability at a location of this kind.
    pub fn rate(&self, kind: LocationKind) -> f64 {
        (self.p() * self.relative(kind)).min(1.0)
    }

    fn draw_code<R: Rng + ?Sized>(&self, kind: LocationKind, rng: &mut R) -> FaultCode {
        match self {
            NoiseModel::Uncorrelated {
                one_qubit,
                two_qubit,
                ..
            } => {
                if kind.arity() == 2 {
                    draw_weighted(two_qubit, rng)
                } else {
                    draw_weighted(one_qubit, rng)
                }
            }
            _ => rng.random_range(1..=kind.fault_types() as FaultCode),
        }
    }

    /// Locations that are faulty for some strength up to `p_max`, with
    /// thresholds such that the set faulty at `p ≤ p_max` is distributed as
    /// this model at `p`. Sets for different `p` are nested, so one draw
    /// serves a whole grid of strengths.
    pub fn sample_candidates<R: Rng + ?Sized>(
        &self,
        circuit: &Circuit,
        p_max: f64,
        rng: &mut R,
    ) -> Vec<Candidate> {
        let n = circuit.locations.len();
        let q = (p_max * self.max_relative()).min(1.0);
        let mut out = Vec::new();
        if q <= 0.0 {
            return out;
        }
        let log_miss = libm::log1p(-q);
        let mut i = 0usize;
        loop {
            if q < 1.0 {
                let u: f64 = rng.random();
                let gap = libm::floor(libm::log1p(-u) / log_miss);
                if !(gap < (n - i) as f64) {
                    break;
                }
                i += gap as usize;
            }
            if i >= n {
                break;
            }
            let kind = circuit.locations[i].kind;
            let rel = self.relative(kind);
            let w: f64 = rng.random();
            let code = match self {
                NoiseModel::Adversarial { .. } => 0,
                _ => self.draw_code(kind, rng),
            };
            if rel > 0.0 {
                out.push(Candidate {
                    location: i,
                    level: w * q / rel,
                    code,
                });
            }
            i += 1;
        }
        out
    }

    /// The faults present at this model's strength, sorted by location.
    pub fn faults_at(
        &self,
        circuit: &Circuit,
        candidates: &[Candidate],
    ) -> Vec<(usize, FaultCode)> {
        let p = self.p();
        let mut faults: Vec<(usize, FaultCode)> = candidates
            .iter()
            .filter(|c| c.level < p)
            .map(|c| (c.location, c.code))
            .collect();
        if let NoiseModel::Adversarial { adversary, .. } = self {
            let locs: Vec<usize> = faults.iter().map(|f| f.0).collect();
            let codes = adversary(circuit, &locs);
            for (f, c) in faults.iter_mut().zip(codes) {
                f.1 = c;
            }
            faults.retain(|f| f.1 != 0);
        }
        faults
    }

    /// One independent draw of the faults in `circuit`.
    pub fn sample<R: Rng + ?Sized>(
        &self,
        circuit: &Circuit,
        rng: &mut R,
    ) -> Vec<(usize, FaultCode)> {
        let candidates = self.sample_candidates(circuit, self.p(), rng);
        self.faults_at(circuit, &candidates)
    }

    fn fresh_fault<R: Rng + ?Sized>(
        &self,
        circuit: &Circuit,
        location: usize,
        rng: &mut R,
    ) -> FaultCode {
        let kind = circuit.locations[location].kind;
        if rng.random::<f64>() >= self.rate(kind) {
            return 0;
        }
        match self {
            NoiseModel::Adversarial { adversary, .. } => adversary(circuit, &[location])
                .first()
                .copied()
                .unwrap_or(0),
            _ => self.draw_code(kind, rng),
        }
    }
}

/// Presampled faults on first attempts; retried verification segments
/// draw fresh noise from the model.
pub struct NoisySource<'a, R> {
    faults: &'a [(usize, FaultCode)],
    noise: &'a NoiseModel,
    circuit: &'a Circuit,
    rng: R,
}

impl<'a, R: Rng> NoisySource<'a, R> {
    /// `faults` must be sorted by location.
    pub fn new(
        circuit: &'a Circuit,
        noise: &'a NoiseModel,
        faults: &'a [(usize, FaultCode)],
        rng: R,
    ) -> Self {
        NoisySource {
            faults,
            noise,
            circuit,
            rng,
        }
    }
}

impl<R: Rng> FaultSource for NoisySource<'_, R> {
    fn fault(&mut self, location: usize, attempt: u32) -> FaultCode {
        if attempt > 0 {
            return self
                .noise
                .fresh_fault(self.circuit, location, &mut self.rng);
        }
        match self.faults.binary_search_by_key(&location, |f| f.0) {
            Ok(i) => self.faults[i].1,
            Err(_) => 0,
        }
    }

    fn first(&self) -> usize {
        self.faults.first().map_or(usize::MAX, |f| f.0)
    }
}
