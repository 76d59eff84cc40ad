//! Fault-set counting for exRecs.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::protocol::Protocol;
use crate::error::{Error, Result};
use crate::ft::frame::{FaultCode, FixedFaults};
use crate::ft::FrameSimulator;

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of `(t+1)`-location subsets of exRec `e`: an upper bound on the
/// fault sets that can make it bad.
pub fn count_fault_sets(protocol: &Protocol, e: usize, t: usize) -> BigUint {
    binomial(protocol.exrec_locations(e).len() as u64, t as u64 + 1)
}

/// Largest [`count_fault_sets`] over all exRecs of the protocol.
pub fn fault_set_bound(protocol: &Protocol, t: usize) -> BigUint {
    (0..protocol.exrecs.len())
        .map(|e| count_fault_sets(protocol, e, t))
        .max()
        .unwrap_or_default()
}

/// `1 / A^(1/t)`: below this rate the level-reduction recursion contracts.
pub fn threshold_from_count(a: &BigUint, t: usize) -> Result<f64> {
    if t == 0 {
        return Err(Error::Domain("t must be at least 1".into()));
    }
    let a = a.to_f64().unwrap_or(f64::INFINITY);
    if a <= 0.0 {
        return Err(Error::Domain("fault-set count must be positive".into()));
    }
    Ok(libm::exp(-libm::log(a) / t as f64))
}

/// Pairs of faults that make a single-fault-tolerant exRec fail.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MalignantReport {
    pub locations: usize,
    pub pairs: u64,
    pub malignant_pairs: u64,
    pub assignments: u64,
    pub failing_assignments: u64,
    /// `Σ failing(a,b) / (types(a)·types(b))`: the leading coefficient of
    /// the failure rate under depolarizing noise.
    pub weighted: f64,
}

impl MalignantReport {
    pub fn merge(mut self, other: &MalignantReport) -> MalignantReport {
        self.pairs += other.pairs;
        self.malignant_pairs += other.malignant_pairs;
        self.assignments += other.assignments;
        self.failing_assignments += other.failing_assignments;
        self.weighted += other.weighted;
        self
    }
}

/// Runs every pair of faulty locations `a < b` with every Pauli
/// assignment through the protocol (clean inputs). Pairs are split by
/// `a mod jobs == shard`.
pub fn malignant_pairs(protocol: &Protocol, shard: usize, jobs: usize) -> Result<MalignantReport> {
    if jobs == 0 || shard >= jobs {
        return Err(Error::Domain(
            "shard must be below a positive job count".into(),
        ));
    }
    let circuit = &protocol.encoded;
    let sim = FrameSimulator::new(circuit);
    let types: Vec<u8> = circuit
        .locations
        .iter()
        .map(|l| l.kind.fault_types() as u8)
        .collect();
    let n = types.len();
    let mut report = MalignantReport {
        locations: n,
        ..MalignantReport::default()
    };
    let mut faults: [(usize, FaultCode); 2] = [(0, 0); 2];
    for a in (shard..n).step_by(jobs) {
        for b in a + 1..n {
            let mut failing = 0u64;
            for ca in 1..=types[a] {
                for cb in 1..=types[b] {
                    faults[0] = (a, ca);
                    faults[1] = (b, cb);
                    if protocol.failed(&sim.run(None, &mut FixedFaults::new(&faults))) {
                        failing += 1;
                    }
                }
            }
            let total = types[a] as u64 * types[b] as u64;
            report.pairs += 1;
            report.assignments += total;
            report.failing_assignments += failing;
            if failing > 0 {
                report.malignant_pairs += 1;
                report.weighted += failing as f64 / total as f64;
            }
        }
    }
    Ok(report)
}

/// Single faults at every location and Pauli; returns `(cases, failures)`.
pub fn single_fault_failures(protocol: &Protocol) -> (u64, u64) {
    let circuit = &protocol.encoded;
    let sim = FrameSimulator::new(circuit);
    let mut cases = 0;
    let mut failures = 0;
    for (i, l) in circuit.locations.iter().enumerate() {
        for c in 1..=l.kind.fault_types() as FaultCode {
            cases += 1;
            let faults = [(i, c)];
            if protocol.failed(&sim.run(None, &mut FixedFaults::new(&faults))) {
                failures += 1;
            }
        }
    }
    (cases, failures)
}
