//! Pauli-frame propagation of injected faults.
//!
//! Frames ignore phases. Measurement records are flips relative to the
//! fault-free run, and feed-forward rules are evaluated on those flips.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::circuit::{Basis, Circuit, Gate1, Gate2, LocationKind, Step};
use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliOperator};

/// Phase-free Pauli on the whole register.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frame {
    pub x: BitVec,
    pub z: BitVec,
}

impl Frame {
    pub fn identity(n: usize) -> Self {
        Frame {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    pub fn from_pauli(p: &PauliOperator) -> Self {
        Frame {
            x: p.x_bits().clone(),
            z: p.z_bits().clone(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    #[inline]
    pub fn apply(&mut self, q: usize, kind: PauliKind) {
        let (x, z) = kind.bits();
        if x {
            self.x.flip(q);
        }
        if z {
            self.z.flip(q);
        }
    }

    pub fn get(&self, q: usize) -> PauliKind {
        PauliKind::from_bits(self.x.get(q), self.z.get(q))
    }

    /// Multiplies `p` (indexed by position in `qubits`) into the frame.
    pub fn apply_on(&mut self, qubits: &[usize], p: &PauliOperator) {
        for (i, &q) in qubits.iter().enumerate() {
            self.apply(q, p.get(i));
        }
    }

    /// The frame on `qubits`, position `i` holding `qubits[i]`.
    pub fn restrict(&self, qubits: &[usize]) -> PauliOperator {
        let kinds: Vec<PauliKind> = qubits.iter().map(|&q| self.get(q)).collect();
        PauliOperator::from_kinds(&kinds)
    }

    pub fn to_pauli(&self) -> PauliOperator {
        PauliOperator::from_bits(self.x.clone(), self.z.clone(), 0).expect("equal lengths")
    }

    #[inline]
    pub fn clear(&mut self, q: usize) {
        self.x.set(q, false);
        self.z.set(q, false);
    }

    pub fn clear_all(&mut self) {
        let n = self.num_qubits();
        self.x = BitVec::zeros(n);
        self.z = BitVec::zeros(n);
    }

    pub fn gate1(&mut self, g: Gate1, q: usize) {
        match g {
            Gate1::H => {
                let (x, z) = (self.x.get(q), self.z.get(q));
                self.x.set(q, z);
                self.z.set(q, x);
            }
            Gate1::P | Gate1::Pdg => {
                if self.x.get(q) {
                    self.z.flip(q);
                }
            }
            Gate1::X | Gate1::Y | Gate1::Z => {}
        }
    }

    pub fn gate2(&mut self, g: Gate2, a: usize, b: usize) {
        match g {
            Gate2::Cnot => {
                if self.x.get(a) {
                    self.x.flip(b);
                }
                if self.z.get(b) {
                    self.z.flip(a);
                }
            }
            Gate2::Cz => {
                let (xa, xb) = (self.x.get(a), self.x.get(b));
                if xb {
                    self.z.flip(a);
                }
                if xa {
                    self.z.flip(b);
                }
            }
            Gate2::Cy => {
                let (xa, xb, zb) = (self.x.get(a), self.x.get(b), self.z.get(b));
                if xb ^ zb {
                    self.z.flip(a);
                }
                if xa {
                    self.x.flip(b);
                    self.z.flip(b);
                }
            }
        }
    }
}

/// Encoded fault: `1..=3` for single-qubit locations (X, Y, Z), `1..=15`
/// for two-qubit ones with the first qubit's Pauli in the high pair of bits.
pub type FaultCode = u8;

const KINDS: [PauliKind; 4] = [PauliKind::I, PauliKind::X, PauliKind::Y, PauliKind::Z];

fn kind_index(k: PauliKind) -> u8 {
    match k {
        PauliKind::I => 0,
        PauliKind::X => 1,
        PauliKind::Y => 2,
        PauliKind::Z => 3,
    }
}

/// The Pauli a fault code stands for at a location of the given kind.
pub fn fault_pauli(kind: LocationKind, code: FaultCode) -> PauliOperator {
    if kind.arity() == 2 {
        PauliOperator::from_kinds(&[KINDS[(code >> 2) as usize], KINDS[(code & 3) as usize]])
    } else {
        PauliOperator::from_kinds(&[KINDS[code as usize]])
    }
}

/// Inverse of [`fault_pauli`].
pub fn fault_code(kind: LocationKind, p: &PauliOperator) -> Result<FaultCode> {
    if p.num_qubits() != kind.arity() {
        return Err(Error::Dimension {
            expected: kind.arity(),
            found: p.num_qubits(),
        });
    }
    if p.is_identity() {
        return Err(Error::Domain("a fault must be a non-identity Pauli".into()));
    }
    Ok(if kind.arity() == 2 {
        kind_index(p.get(0)) << 2 | kind_index(p.get(1))
    } else {
        kind_index(p.get(0))
    })
}

/// One injected fault, serialized with its Pauli label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub location: usize,
    pub pauli: PauliOperator,
}

/// A set of faults at distinct locations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaultPattern {
    pub faults: Vec<Fault>,
}

impl FaultPattern {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.faults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faults.is_empty()
    }

    pub fn push(&mut self, location: usize, pauli: PauliOperator) {
        self.faults.push(Fault { location, pauli });
    }

    /// Checks locations and supports, returning sorted `(location, code)`
    /// pairs.
    pub fn encode(&self, circuit: &Circuit) -> Result<Vec<(usize, FaultCode)>> {
        let mut out = Vec::with_capacity(self.faults.len());
        for f in &self.faults {
            let loc = circuit
                .locations
                .get(f.location)
                .ok_or(Error::IndexOutOfRange {
                    index: f.location,
                    len: circuit.locations.len(),
                })?;
            out.push((f.location, fault_code(loc.kind, &f.pauli)?));
        }
        out.sort_unstable();
        if out.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Domain("two faults at one location".into()));
        }
        Ok(out)
    }

    pub fn decode(circuit: &Circuit, faults: &[(usize, FaultCode)]) -> FaultPattern {
        FaultPattern {
            faults: faults
                .iter()
                .map(|&(location, code)| Fault {
                    location,
                    pauli: fault_pauli(circuit.locations[location].kind, code),
                })
                .collect(),
        }
    }
}

/// Supplies faults during propagation.
pub trait FaultSource {
    /// Fault at `location` on the given attempt of its segment (attempt 0
    /// outside segments); 0 means no fault.
    fn fault(&mut self, location: usize, attempt: u32) -> FaultCode;
    /// Lower bound on the ids of locations faulty on attempt 0.
    fn first(&self) -> usize;
}

/// Faults on the first attempt only: rejected segments are retried
/// cleanly.
#[derive(Clone, Copy, Debug)]
pub struct FixedFaults<'a> {
    faults: &'a [(usize, FaultCode)],
}

impl<'a> FixedFaults<'a> {
    /// `faults` must be sorted by location.
    pub fn new(faults: &'a [(usize, FaultCode)]) -> Self {
        debug_assert!(faults.windows(2).all(|w| w[0].0 < w[1].0));
        FixedFaults { faults }
    }
}

impl FaultSource for FixedFaults<'_> {
    fn fault(&mut self, location: usize, attempt: u32) -> FaultCode {
        if attempt > 0 {
            return 0;
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

/// Outcome of one propagation.
#[derive(Clone, Debug)]
pub struct Propagation {
    pub frame: Frame,
    /// Measurement flips relative to the fault-free run.
    pub flips: BitVec,
    /// Frame at each checkpoint (identity when it was never reached with a
    /// nontrivial frame).
    pub checkpoints: Vec<PauliOperator>,
    pub retries: u32,
    /// Some segment exhausted its attempts.
    pub aborted: bool,
}

/// Reusable propagation engine for one circuit.
#[derive(Clone, Debug)]
pub struct FrameSimulator<'c> {
    circuit: &'c Circuit,
    step_of_location: Vec<usize>,
    pub max_attempts: u32,
}

/// Default bound on verification attempts per segment.
pub const DEFAULT_MAX_ATTEMPTS: u32 = 100;

impl<'c> FrameSimulator<'c> {
    pub fn new(circuit: &'c Circuit) -> Self {
        let mut step_of_location = vec![0; circuit.locations.len()];
        for (i, s) in circuit.steps.iter().enumerate() {
            if let Step::Location(id) = *s {
                step_of_location[id] = i;
            }
        }
        FrameSimulator {
            circuit,
            step_of_location,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn circuit(&self) -> &'c Circuit {
        self.circuit
    }

    #[inline]
    fn location(&self, frame: &mut Frame, flips: &mut BitVec, id: usize, code: FaultCode) {
        let l = &self.circuit.locations[id];
        let qs = l.qubits();
        match l.kind {
            LocationKind::Prep(_) => frame.clear(qs[0]),
            LocationKind::Gate1(g) => frame.gate1(g, qs[0]),
            LocationKind::Gate2(g) => frame.gate2(g, qs[0], qs[1]),
            LocationKind::Measure(_) | LocationKind::Wait => {}
        }
        if code != 0 {
            if l.kind.arity() == 2 {
                frame.apply(qs[0], KINDS[(code >> 2) as usize]);
                frame.apply(qs[1], KINDS[(code & 3) as usize]);
            } else {
                frame.apply(qs[0], KINDS[code as usize]);
            }
        }
        if let LocationKind::Measure(b) = l.kind {
            let q = qs[0];
            let flip = match b {
                Basis::Z => frame.x.get(q),
                Basis::X => frame.z.get(q),
            };
            flips.set(l.measurement.expect("measurement index"), flip);
            frame.clear(q);
        }
    }

    /// Runs the circuit with an optional input frame.
    pub fn run<S: FaultSource>(&self, input: Option<&Frame>, source: &mut S) -> Propagation {
        let c = self.circuit;
        let mut frame = match input {
            Some(f) => {
                assert_eq!(f.num_qubits(), c.n, "input frame size");
                f.clone()
            }
            None => Frame::identity(c.n),
        };
        let mut flips = BitVec::zeros(c.num_measurements);
        let mut checkpoints: Vec<PauliOperator> = c
            .checkpoints
            .iter()
            .map(|cp| PauliOperator::identity(cp.qubits.len()))
            .collect();
        let mut retries = 0u32;
        let mut aborted = false;
        let start = if frame.is_identity() {
            let first = source.first();
            if first >= c.locations.len() {
                return Propagation {
                    frame,
                    flips,
                    checkpoints,
                    retries,
                    aborted,
                };
            }
            self.step_of_location[first]
        } else {
            0
        };
        for step in &c.steps[start..] {
            match *step {
                Step::Location(id) => {
                    let code = source.fault(id, 0);
                    self.location(&mut frame, &mut flips, id, code);
                }
                Step::FeedForward(i) => {
                    for (q, k) in c.feed_forward[i].correction(&flips) {
                        frame.apply(q, k);
                    }
                }
                Step::Verify(g) => {
                    let seg = &c.segments[g];
                    let mut attempt = 0u32;
                    let rejected = |flips: &BitVec| {
                        seg.checks
                            .iter()
                            .any(|group| group.iter().fold(false, |acc, &m| acc ^ flips.get(m)))
                    };
                    while rejected(&flips) {
                        attempt += 1;
                        if attempt >= self.max_attempts {
                            aborted = true;
                            break;
                        }
                        retries += 1;
                        for &q in &seg.qubits {
                            frame.clear(q);
                        }
                        for &id in &seg.locations {
                            let code = source.fault(id, attempt);
                            self.location(&mut frame, &mut flips, id, code);
                        }
                    }
                }
                Step::Checkpoint(i) => {
                    checkpoints[i] = frame.restrict(&c.checkpoints[i].qubits);
                }
                Step::Gauge(i) => apply_gauge(&mut frame, &c.gauges[i]),
            }
        }
        Propagation {
            frame,
            flips,
            checkpoints,
            retries,
            aborted,
        }
    }

    /// Runs a serialized fault pattern.
    pub fn run_pattern(
        &self,
        input: Option<&Frame>,
        pattern: &FaultPattern,
    ) -> Result<Propagation> {
        let faults = pattern.encode(self.circuit)?;
        Ok(self.run(input, &mut FixedFaults::new(&faults)))
    }
}

fn apply_gauge(frame: &mut Frame, gauge: &super::circuit::Gauge) {
    let e = frame.restrict(&gauge.qubits);
    let syndrome = BitVec::from_bools(
        &gauge
            .generators
            .iter()
            .map(|g| e.anticommutes_unchecked(g))
            .collect::<Vec<_>>(),
    );
    let mut corrected = e;
    corrected.mul_assign_unchecked(gauge.table.leader(&syndrome));
    if corrected.anticommutes_unchecked(&gauge.test) {
        frame.apply_on(&gauge.qubits, &gauge.fix);
    }
}

/// Propagates faults through a circuit with no input error.
pub fn propagate(circuit: &Circuit, faults: &FaultPattern) -> Result<Propagation> {
    FrameSimulator::new(circuit).run_pattern(None, faults)
}
