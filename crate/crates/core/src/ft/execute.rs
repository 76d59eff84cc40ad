//! Runs a located circuit on the stabilizer tableau with actual
//! measurement outcomes, as a cross-check of frame propagation.

use rand::Rng;

use super::circuit::{Basis, Circuit, LocationKind, Step};
use super::frame::{fault_pauli, FaultSource, DEFAULT_MAX_ATTEMPTS};
use crate::bits::BitVec;
use crate::clifford::{CliffordGate, Tableau};
use crate::error::{check_len, Result};
use crate::pauli::{PauliKind, PauliOperator};

/// Which random outcome the tableau asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Draw {
    /// Readout of measurement `i`.
    Measurement(usize),
    /// Collapse of a qubit being reset.
    Reset,
}

#[derive(Clone, Debug)]
pub struct Execution {
    pub tableau: Tableau,
    /// Actual readouts; `true` is the `-1` outcome.
    pub outcomes: BitVec,
    pub retries: u32,
    pub aborted: bool,
}

fn single(n: usize, q: usize, kind: PauliKind) -> PauliOperator {
    PauliOperator::single(n, q, kind).expect("qubit in range")
}

/// Executes `circuit` from `initial`, drawing random outcomes from `choose`.
pub fn execute_with<S: FaultSource>(
    circuit: &Circuit,
    initial: Tableau,
    source: &mut S,
    choose: &mut dyn FnMut(Draw) -> bool,
) -> Result<Execution> {
    let n = circuit.n;
    check_len(n, initial.num_qubits())?;
    let mut t = initial;
    let mut outcomes = BitVec::zeros(circuit.num_measurements);
    let mut retries = 0;
    let mut aborted = false;

    let mut run_location =
        |t: &mut Tableau, outcomes: &mut BitVec, id: usize, attempt: u32| -> Result<()> {
            let l = &circuit.locations[id];
            let qs = l.qubits();
            match l.kind {
                LocationKind::Prep(b) => {
                    let (m, flip) = match b {
                        Basis::Z => (PauliKind::Z, PauliKind::X),
                        Basis::X => (PauliKind::X, PauliKind::Z),
                    };
                    if t.measure_with(&single(n, qs[0], m), || choose(Draw::Reset))?
                        .negative
                    {
                        t.apply_gate(&CliffordGate::Pauli(single(n, qs[0], flip)))?;
                    }
                }
                LocationKind::Gate1(_) | LocationKind::Gate2(_) => {
                    t.apply_gate(&l.gate().expect("gate location"))?;
                }
                LocationKind::Measure(_) | LocationKind::Wait => {}
            }
            let code = source.fault(id, attempt);
            if code != 0 {
                let local = fault_pauli(l.kind, code);
                let full = local.embed(n, qs)?;
                t.apply_gate(&CliffordGate::Pauli(full))?;
            }
            if let LocationKind::Measure(b) = l.kind {
                let kind = if b == Basis::Z {
                    PauliKind::Z
                } else {
                    PauliKind::X
                };
                let index = l.measurement.expect("measurement index");
                let o =
                    t.measure_with(&single(n, qs[0], kind), || choose(Draw::Measurement(index)))?;
                outcomes.set(index, o.negative);
            }
            Ok(())
        };

    for step in &circuit.steps {
        match *step {
            Step::Location(id) => run_location(&mut t, &mut outcomes, id, 0)?,
            Step::FeedForward(i) => {
                for (q, k) in circuit.feed_forward[i].correction(&outcomes) {
                    t.apply_gate(&CliffordGate::Pauli(single(n, q, k)))?;
                }
            }
            Step::Verify(g) => {
                let seg = &circuit.segments[g];
                let rejected = |o: &BitVec| {
                    seg.checks
                        .iter()
                        .any(|group| group.iter().fold(false, |acc, &m| acc ^ o.get(m)))
                };
                let mut attempt = 0u32;
                while rejected(&outcomes) {
                    attempt += 1;
                    if attempt >= DEFAULT_MAX_ATTEMPTS {
                        aborted = true;
                        break;
                    }
                    retries += 1;
                    for &id in &seg.locations {
                        run_location(&mut t, &mut outcomes, id, attempt)?;
                    }
                }
            }
            Step::Checkpoint(_) | Step::Gauge(_) => {}
        }
    }
    Ok(Execution {
        tableau: t,
        outcomes,
        retries,
        aborted,
    })
}

/// [`execute_with`] with fair coin flips from `rng`.
pub fn execute<S: FaultSource, R: Rng + ?Sized>(
    circuit: &Circuit,
    initial: Tableau,
    source: &mut S,
    rng: &mut R,
) -> Result<Execution> {
    execute_with(circuit, initial, source, &mut |_| rng.random::<bool>())
}

/// Every operator in `ops`, placed on `qubits`, has a deterministic `+1`
/// outcome on `t` (signs in `ops` included).
pub fn stabilized_by(t: &Tableau, qubits: &[usize], ops: &[PauliOperator]) -> Result<bool> {
    for op in ops {
        let full = op.embed(t.num_qubits(), qubits)?;
        if t.peek(&full)? != Some(false) {
            return Ok(false);
        }
    }
    Ok(true)
}
