use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CliffordGate, Instruction, PrepState, SimCircuit, Tableau};
use crate::dense::{gates, DenseState};
use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliOperator};

const PROBABILITY_TOLERANCE: f64 = 1e-9;

pub fn apply_dense_gate(state: &mut DenseState, gate: &CliffordGate) -> Result<()> {
    use CliffordGate::*;
    match gate {
        H(q) => state.apply_1q(*q, &gates::h()),
        P(q) => state.apply_1q(*q, &gates::p()),
        Pdg(q) => state.apply_1q(*q, &gates::pdg()),
        X(q) => state.apply_1q(*q, &gates::x()),
        Y(q) => state.apply_1q(*q, &gates::y()),
        Z(q) => state.apply_1q(*q, &gates::z()),
        Cnot(c, t) => state.apply_controlled(*c, *t, &gates::x()),
        Cz(c, t) => state.apply_controlled(*c, *t, &gates::z()),
        Cy(c, t) => state.apply_controlled(*c, *t, &gates::y()),
        Pauli(p) => state.apply_pauli(p),
    }
}

fn prep_ops(n: usize, q: usize, s: PrepState) -> Result<(PauliOperator, PauliOperator)> {
    Ok(match s {
        PrepState::Zero => (
            PauliOperator::single(n, q, PauliKind::Z)?,
            PauliOperator::single(n, q, PauliKind::X)?,
        ),
        PrepState::Plus => (
            PauliOperator::single(n, q, PauliKind::X)?,
            PauliOperator::single(n, q, PauliKind::Z)?,
        ),
    })
}

/// State-vector run from `|0…0⟩`, with Born-rule sampling for every
/// measurement and reset. Returns the final state and the `MEAS` outcomes
/// (`true` for `-1`).
pub fn dense_run<R: Rng + ?Sized>(
    circuit: &SimCircuit,
    limit: usize,
    rng: &mut R,
) -> Result<(DenseState, Vec<bool>)> {
    let n = circuit.n;
    let mut state = DenseState::zero(n, limit)?;
    let mut outcomes = Vec::new();
    for ins in &circuit.instructions {
        match ins {
            Instruction::Gate(g) => apply_dense_gate(&mut state, g)?,
            Instruction::T(q) => state.apply_1q(*q, &gates::t())?,
            Instruction::Measure(p) => outcomes.push(state.measure_pauli(p, rng)?),
            Instruction::Prep(q, s) => {
                let (m, flip) = prep_ops(n, *q, *s)?;
                if state.measure_pauli(&m, rng)? {
                    state.apply_pauli(&flip)?;
                }
            }
            Instruction::Wait(_) => {}
        }
    }
    Ok((state, outcomes))
}

/// Agreement statistics between the tableau and the state vector.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CrossCheckReport {
    pub runs: usize,
    pub deterministic: usize,
    pub deterministic_mismatches: usize,
    pub random: usize,
    /// Largest `|Pr[-1] - 1/2|` seen by the dense engine where the tableau
    /// reported a random outcome.
    pub random_probability_deviation: f64,
    /// Tableau stabilizer rows whose dense expectation is not `+1`.
    pub stabilizer_mismatches: usize,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.deterministic_mismatches == 0
            && self.stabilizer_mismatches == 0
            && self.random_probability_deviation <= PROBABILITY_TOLERANCE
    }

    pub fn merge(&mut self, other: &CrossCheckReport) {
        self.runs += other.runs;
        self.deterministic += other.deterministic;
        self.deterministic_mismatches += other.deterministic_mismatches;
        self.random += other.random;
        self.random_probability_deviation = self
            .random_probability_deviation
            .max(other.random_probability_deviation);
        self.stabilizer_mismatches += other.stabilizer_mismatches;
    }
}

/// Runs a Clifford circuit in lockstep on both engines for each seed. The
/// tableau draws the random outcomes and the dense state is projected onto
/// the same branch, so post-measurement states can be compared directly.
pub fn clifford_vs_dense_check(
    circuit: &SimCircuit,
    limit: usize,
    seeds: &[u64],
) -> Result<CrossCheckReport> {
    if !circuit.is_clifford() {
        return Err(Error::Unsupported(
            "cross-check needs a Clifford circuit".into(),
        ));
    }
    let n = circuit.n;
    let mut report = CrossCheckReport::default();
    for &seed in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut tab = Tableau::new(n);
        let mut state = DenseState::zero(n, limit)?;
        report.runs += 1;
        for ins in &circuit.instructions {
            match ins {
                Instruction::Gate(g) => {
                    tab.apply_gate(g)?;
                    apply_dense_gate(&mut state, g)?;
                }
                Instruction::Measure(p) => {
                    let outcome = tab.measure_pauli(p, &mut rng)?;
                    let p_minus = state.probability_minus(p)?;
                    if outcome.deterministic {
                        report.deterministic += 1;
                        let expected = if outcome.negative { 1.0 } else { 0.0 };
                        if (p_minus - expected).abs() > PROBABILITY_TOLERANCE {
                            report.deterministic_mismatches += 1;
                        }
                    } else {
                        report.random += 1;
                        report.random_probability_deviation = report
                            .random_probability_deviation
                            .max((p_minus - 0.5).abs());
                    }
                    state.project_pauli(p, outcome.negative)?;
                    state.normalize();
                    report.stabilizer_mismatches += stabilizer_mismatches(&tab, &state)?;
                }
                Instruction::Prep(q, s) => {
                    let negative = tab.reset(*q, *s == PrepState::Plus, &mut rng)?;
                    let (m, flip) = prep_ops(n, *q, *s)?;
                    state.project_pauli(&m, negative)?;
                    state.normalize();
                    if negative {
                        state.apply_pauli(&flip)?;
                    }
                }
                Instruction::Wait(_) => {}
                Instruction::T(_) => unreachable!("checked above"),
            }
        }
        report.stabilizer_mismatches += stabilizer_mismatches(&tab, &state)?;
    }
    Ok(report)
}

fn stabilizer_mismatches(tab: &Tableau, state: &DenseState) -> Result<usize> {
    let mut bad = 0;
    for s in tab.stabilizers() {
        if (state.expectation(s)?.re - 1.0).abs() > PROBABILITY_TOLERANCE {
            bad += 1;
        }
    }
    Ok(bad)
}
