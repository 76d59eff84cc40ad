//! Scheduled fault-tolerant circuits: noisy locations interleaved with
//! noiseless classical steps (feed-forward, verification, checkpoints).

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::clifford::{CliffordGate, Instruction, PrepState, SimCircuit};
use crate::codes::{ClassicalLeaderTable, PauliLeaderTable};
use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliOperator};

/// Preparation or measurement basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Basis {
    Z,
    X,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate1 {
    H,
    P,
    Pdg,
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gate2 {
    Cnot,
    Cz,
    Cy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocationKind {
    Prep(Basis),
    Gate1(Gate1),
    Gate2(Gate2),
    Measure(Basis),
    Wait,
}

impl LocationKind {
    pub fn arity(self) -> usize {
        match self {
            LocationKind::Gate2(_) => 2,
            _ => 1,
        }
    }

    /// Number of non-identity Paulis a fault here can be.
    pub fn fault_types(self) -> usize {
        if self.arity() == 2 {
            15
        } else {
            3
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LocationKind::Prep(Basis::Z) => "prep0",
            LocationKind::Prep(Basis::X) => "prep+",
            LocationKind::Gate1(g) => match g {
                Gate1::H => "h",
                Gate1::P => "p",
                Gate1::Pdg => "pdg",
                Gate1::X => "x",
                Gate1::Y => "y",
                Gate1::Z => "z",
            },
            LocationKind::Gate2(Gate2::Cnot) => "cnot",
            LocationKind::Gate2(Gate2::Cz) => "cz",
            LocationKind::Gate2(Gate2::Cy) => "cy",
            LocationKind::Measure(Basis::Z) => "measz",
            LocationKind::Measure(Basis::X) => "measx",
            LocationKind::Wait => "wait",
        }
    }
}

/// One noisy circuit location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub kind: LocationKind,
    qubits: [usize; 2],
    pub time: usize,
    /// Index into [`Circuit::instances`].
    pub instance: usize,
    /// Retryable verified segment this location belongs to.
    pub segment: Option<usize>,
    /// Measurement index for measurement locations.
    pub measurement: Option<usize>,
}

impl Location {
    pub fn qubits(&self) -> &[usize] {
        &self.qubits[..self.kind.arity()]
    }

    /// The Clifford gate applied here, if it is a gate location.
    pub fn gate(&self) -> Option<CliffordGate> {
        let [a, b] = self.qubits;
        Some(match self.kind {
            LocationKind::Gate1(g) => match g {
                Gate1::H => CliffordGate::H(a),
                Gate1::P => CliffordGate::P(a),
                Gate1::Pdg => CliffordGate::Pdg(a),
                Gate1::X => CliffordGate::X(a),
                Gate1::Y => CliffordGate::Y(a),
                Gate1::Z => CliffordGate::Z(a),
            },
            LocationKind::Gate2(g) => match g {
                Gate2::Cnot => CliffordGate::Cnot(a, b),
                Gate2::Cz => CliffordGate::Cz(a, b),
                Gate2::Cy => CliffordGate::Cy(a, b),
            },
            _ => return None,
        })
    }
}

/// What a gadget instance inside a larger circuit implements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InstanceKind {
    Prep,
    Gate,
    Meas,
    Wait,
    Ec,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub kind: InstanceKind,
    pub label: String,
    pub blocks: Vec<usize>,
}

/// A named code block occupying a list of qubits (position `i` is
/// `qubits[i]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub qubits: Vec<usize>,
}

/// Decodes a measured codeword to one logical bit: the word is corrected
/// with the leader table and dotted with `logical`.
#[derive(Clone, Debug)]
pub struct LogicalReadout {
    pub word: Vec<usize>,
    pub table: ClassicalLeaderTable,
    pub logical: BitVec,
}

impl LogicalReadout {
    pub fn value(&self, bits: &BitVec) -> bool {
        let w = gather(bits, &self.word);
        self.table.correct(&w).dot(&self.logical)
    }
}

fn gather(bits: &BitVec, idx: &[usize]) -> BitVec {
    BitVec::from_bools(&idx.iter().map(|&i| bits.get(i)).collect::<Vec<_>>())
}

/// How repeated syndrome rounds are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Consensus {
    /// Per-bit majority over all rounds.
    Majority,
    /// The first syndrome seen in this many consecutive rounds, otherwise
    /// the last round.
    Repeated(usize),
}

/// Noiseless classically controlled Pauli correction.
#[derive(Clone, Debug)]
pub enum FeedForward {
    /// Decode the measured word with a classical leader table and apply
    /// `kind` on `targets[i]` for every leader bit `i`.
    Leader {
        word: Vec<usize>,
        table: ClassicalLeaderTable,
        kind: PauliKind,
        targets: Vec<usize>,
    },
    /// `rounds[r][g]` lists the measurements whose parity is syndrome bit
    /// `g` in round `r`; the consensus syndrome selects a Pauli leader that
    /// is applied on `targets`.
    Syndrome {
        rounds: Vec<Vec<Vec<usize>>>,
        rule: Consensus,
        table: PauliLeaderTable,
        targets: Vec<usize>,
    },
    /// Apply a fixed Pauli when a decoded logical bit is one.
    Logical {
        readout: LogicalReadout,
        apply: Vec<(usize, PauliKind)>,
    },
}

impl FeedForward {
    /// Measurement indices this step reads.
    pub fn sources(&self) -> Vec<usize> {
        match self {
            FeedForward::Leader { word, .. } => word.clone(),
            FeedForward::Syndrome { rounds, .. } => {
                rounds.iter().flatten().flatten().copied().collect()
            }
            FeedForward::Logical { readout, .. } => readout.word.clone(),
        }
    }

    /// Qubits the correction may touch.
    pub fn targets(&self) -> Vec<usize> {
        match self {
            FeedForward::Leader { targets, .. } | FeedForward::Syndrome { targets, .. } => {
                targets.clone()
            }
            FeedForward::Logical { apply, .. } => apply.iter().map(|&(q, _)| q).collect(),
        }
    }

    /// Combined syndrome of a `Syndrome` rule; `None` for other rules.
    pub fn consensus_syndrome(&self, bits: &BitVec) -> Option<BitVec> {
        let FeedForward::Syndrome { rounds, rule, .. } = self else {
            return None;
        };
        let gens = rounds.first().map_or(0, Vec::len);
        let round_syndrome = |round: &Vec<Vec<usize>>| {
            BitVec::from_bools(
                &round
                    .iter()
                    .map(|ms| ms.iter().fold(false, |acc, &m| acc ^ bits.get(m)))
                    .collect::<Vec<_>>(),
            )
        };
        let per_round: Vec<BitVec> = rounds.iter().map(round_syndrome).collect();
        match *rule {
            Consensus::Majority => {
                let mut s = BitVec::zeros(gens);
                for g in 0..gens {
                    let ones = per_round.iter().filter(|r| r.get(g)).count();
                    s.set(g, 2 * ones > rounds.len());
                }
                Some(s)
            }
            Consensus::Repeated(k) => {
                let k = k.max(1);
                let agreed = per_round
                    .windows(k)
                    .find(|w| w.iter().all(|r| *r == w[0]))
                    .map(|w| w[0].clone());
                Some(
                    agreed
                        .or_else(|| per_round.last().cloned())
                        .unwrap_or_else(|| BitVec::zeros(gens)),
                )
            }
        }
    }

    /// The correction selected by the given measurement record.
    pub fn correction(&self, bits: &BitVec) -> Vec<(usize, PauliKind)> {
        match self {
            FeedForward::Leader {
                word,
                table,
                kind,
                targets,
            } => {
                let w = gather(bits, word);
                table
                    .leader_for_word(&w)
                    .iter_ones()
                    .map(|i| (targets[i], *kind))
                    .collect()
            }
            FeedForward::Syndrome { table, targets, .. } => {
                let s = self.consensus_syndrome(bits).expect("syndrome rule");
                let leader = table.leader(&s);
                leader
                    .support()
                    .iter_ones()
                    .map(|i| (targets[i], leader.get(i)))
                    .collect()
            }
            FeedForward::Logical { readout, apply } => {
                if readout.value(bits) {
                    apply.clone()
                } else {
                    Vec::new()
                }
            }
        }
    }
}

/// A retryable verified state preparation on qubits no other operation
/// touches before its verification step.
#[derive(Clone, Debug, Default)]
pub struct Segment {
    pub qubits: Vec<usize>,
    /// Location ids in execution order.
    pub locations: Vec<usize>,
    /// Parity groups of verification measurements; the segment is accepted
    /// when every group has even parity relative to the fault-free run.
    pub checks: Vec<Vec<usize>>,
    pub verify_time: usize,
}

/// Records the Pauli frame on some qubits when execution reaches it.
#[derive(Clone, Debug)]
pub struct Checkpoint {
    pub label: String,
    pub qubits: Vec<usize>,
}

/// Frame-only relabelling of a freshly prepared block: a logical component
/// that fixes the prepared state is multiplied away. `test` detects the
/// component (after ideal correction) and `fix` removes it.
#[derive(Clone, Debug)]
pub struct Gauge {
    pub qubits: Vec<usize>,
    pub generators: Vec<PauliOperator>,
    pub table: PauliLeaderTable,
    pub test: PauliOperator,
    pub fix: PauliOperator,
}

/// One entry of the execution order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Location(usize),
    FeedForward(usize),
    Verify(usize),
    Checkpoint(usize),
    Gauge(usize),
}

/// A scheduled circuit of noisy locations and noiseless classical steps.
#[derive(Clone, Debug)]
pub struct Circuit {
    pub n: usize,
    pub locations: Vec<Location>,
    pub steps: Vec<Step>,
    pub feed_forward: Vec<FeedForward>,
    pub segments: Vec<Segment>,
    pub checkpoints: Vec<Checkpoint>,
    pub gauges: Vec<Gauge>,
    pub blocks: Vec<Block>,
    pub instances: Vec<Instance>,
    /// Qubits live from time 0 (input blocks).
    pub input_qubits: Vec<usize>,
    pub num_measurements: usize,
    /// Location id of each measurement.
    pub measurement_locations: Vec<usize>,
    /// Number of time steps.
    pub depth: usize,
}

impl Circuit {
    pub fn num_locations(&self) -> usize {
        self.locations.len()
    }

    /// `(block, position)` of every qubit that belongs to a block.
    pub fn block_map(&self) -> Vec<Option<(usize, usize)>> {
        let mut map = vec![None; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for (i, &q) in block.qubits.iter().enumerate() {
                map[q] = Some((b, i));
            }
        }
        map
    }

    /// Location counts per kind name, sorted by name.
    pub fn location_counts(&self) -> Vec<(&'static str, usize)> {
        let mut counts: Vec<(&'static str, usize)> = Vec::new();
        for l in &self.locations {
            match counts.iter_mut().find(|(k, _)| *k == l.kind.name()) {
                Some((_, c)) => *c += 1,
                None => counts.push((l.kind.name(), 1)),
            }
        }
        counts.sort();
        counts
    }

    /// Checks the structural invariants: non-input qubits start with a
    /// preparation, nothing follows a measurement, and every live qubit sits
    /// in exactly one location per time step.
    pub fn validate(&self) -> Result<()> {
        let mut per_qubit: Vec<Vec<&Location>> = vec![Vec::new(); self.n];
        for l in &self.locations {
            for &q in l.qubits() {
                per_qubit[q].push(l);
            }
        }
        let inputs: BTreeSet<usize> = self.input_qubits.iter().copied().collect();
        for (q, locs) in per_qubit.iter().enumerate() {
            let Some(first) = locs.first() else { continue };
            if !inputs.contains(&q) && !matches!(first.kind, LocationKind::Prep(_)) {
                return Err(Error::Construction(alloc::format!(
                    "qubit {q} is used before being prepared"
                )));
            }
            let start = first.time;
            let last = locs[locs.len() - 1];
            let end = if matches!(last.kind, LocationKind::Measure(_)) {
                last.time
            } else {
                self.depth - 1
            };
            let mut expect = start;
            for l in locs {
                if l.time != expect {
                    return Err(Error::Construction(alloc::format!(
                        "qubit {q} has {} locations at time {expect}",
                        if l.time > expect { "no" } else { "several" }
                    )));
                }
                if matches!(l.kind, LocationKind::Measure(_)) && !core::ptr::eq(*l, last) {
                    return Err(Error::Construction(alloc::format!(
                        "qubit {q} is used after its measurement"
                    )));
                }
                expect += 1;
            }
            if expect != end + 1 {
                return Err(Error::Construction(alloc::format!(
                    "qubit {q} idles past time {}",
                    expect - 1
                )));
            }
        }
        Ok(())
    }

    /// The noisy part as a simulator circuit; classical steps become
    /// comments.
    pub fn to_sim_circuit(&self) -> SimCircuit {
        let mut sim = SimCircuit::new(self.n);
        for step in &self.steps {
            if let Step::Location(id) = *step {
                let l = &self.locations[id];
                let q = l.qubits[0];
                let ins = match l.kind {
                    LocationKind::Prep(Basis::Z) => Instruction::Prep(q, PrepState::Zero),
                    LocationKind::Prep(Basis::X) => Instruction::Prep(q, PrepState::Plus),
                    LocationKind::Measure(b) => {
                        let kind = if b == Basis::Z {
                            PauliKind::Z
                        } else {
                            PauliKind::X
                        };
                        Instruction::Measure(PauliOperator::single(self.n, q, kind).expect("index"))
                    }
                    LocationKind::Wait => Instruction::Wait(q),
                    _ => Instruction::Gate(l.gate().expect("gate location")),
                };
                sim.push(ins).expect("valid instruction");
            }
        }
        sim
    }

    /// Circuit text in the simulator format, with block, segment and
    /// feed-forward annotations as comments.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "# locations {} depth {}",
            self.locations.len(),
            self.depth
        );
        for b in &self.blocks {
            let _ = writeln!(s, "# block {} {:?}", b.name, b.qubits);
        }
        let _ = writeln!(s, "QUBITS {}", self.n);
        let sim = self.to_sim_circuit();
        let mut lines = sim
            .to_text()
            .lines()
            .skip(1)
            .map(String::from)
            .collect::<Vec<_>>()
            .into_iter();
        for step in &self.steps {
            match *step {
                Step::Location(_) => {
                    let _ = writeln!(s, "{}", lines.next().expect("one line per location"));
                }
                Step::FeedForward(i) => {
                    let ff = &self.feed_forward[i];
                    let _ = writeln!(
                        s,
                        "# feedforward reads {:?} targets {:?}",
                        ff.sources(),
                        ff.targets()
                    );
                }
                Step::Verify(g) => {
                    let _ = writeln!(s, "# verify {:?}", self.segments[g].checks);
                }
                Step::Checkpoint(c) => {
                    let _ = writeln!(s, "# checkpoint {}", self.checkpoints[c].label);
                }
                Step::Gauge(_) => {}
            }
        }
        s
    }
}

#[derive(Clone, Debug)]
enum Pending {
    Loc {
        kind: LocationKind,
        qubits: [usize; 2],
        instance: usize,
        segment: Option<usize>,
        measurement: Option<usize>,
    },
    FeedForward(usize),
    Verify(usize),
    Checkpoint(usize),
    Gauge(usize),
}

/// When operations run relative to their dependencies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    /// As soon as possible; inputs are live from time 0.
    #[default]
    Asap,
    /// As late as possible; every qubit, inputs included, goes live at its
    /// first operation, so ancillas are prepared just before use.
    Alap,
}

/// Builds circuits in program order and schedules them, filling idle slots
/// of live qubits with wait locations.
#[derive(Clone, Debug)]
pub struct CircuitBuilder {
    schedule: Schedule,
    n: usize,
    pending: Vec<Pending>,
    blocks: Vec<Block>,
    input_qubits: Vec<usize>,
    segments: Vec<Segment>,
    open_segment: Option<usize>,
    checkpoints: Vec<Checkpoint>,
    gauges: Vec<Gauge>,
    feed_forward: Vec<FeedForward>,
    instances: Vec<Instance>,
    instance_stack: Vec<usize>,
    num_measurements: usize,
}

impl Default for CircuitBuilder {
    fn default() -> Self {
        Self::new()
    }
}

impl CircuitBuilder {
    pub fn new() -> Self {
        CircuitBuilder {
            schedule: Schedule::Asap,
            n: 0,
            pending: Vec::new(),
            blocks: Vec::new(),
            input_qubits: Vec::new(),
            segments: Vec::new(),
            open_segment: None,
            checkpoints: Vec::new(),
            gauges: Vec::new(),
            feed_forward: Vec::new(),
            instances: vec![Instance {
                kind: InstanceKind::Other,
                label: String::from("top"),
                blocks: Vec::new(),
            }],
            instance_stack: vec![0],
            num_measurements: 0,
        }
    }

    pub fn set_schedule(&mut self, schedule: Schedule) {
        self.schedule = schedule;
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn add_qubits(&mut self, count: usize) -> Vec<usize> {
        let qs = (self.n..self.n + count).collect();
        self.n += count;
        qs
    }

    pub fn add_block(&mut self, name: impl Into<String>, size: usize) -> usize {
        let qubits = self.add_qubits(size);
        self.blocks.push(Block {
            name: name.into(),
            qubits,
        });
        self.blocks.len() - 1
    }

    pub fn block_qubits(&self, block: usize) -> &[usize] {
        &self.blocks[block].qubits
    }

    /// Declares a block as input: its qubits are live from time 0.
    pub fn mark_input(&mut self, block: usize) {
        let qs = self.blocks[block].qubits.clone();
        self.input_qubits.extend(qs);
    }

    pub fn begin_instance(
        &mut self,
        kind: InstanceKind,
        label: impl Into<String>,
        blocks: Vec<usize>,
    ) -> usize {
        self.instances.push(Instance {
            kind,
            label: label.into(),
            blocks,
        });
        let id = self.instances.len() - 1;
        self.instance_stack.push(id);
        id
    }

    pub fn end_instance(&mut self) {
        assert!(self.instance_stack.len() > 1, "no open instance");
        self.instance_stack.pop();
    }

    fn current_instance(&self) -> usize {
        *self.instance_stack.last().expect("root instance")
    }

    fn push_loc(&mut self, kind: LocationKind, qubits: [usize; 2], measurement: Option<usize>) {
        for &q in &qubits[..kind.arity()] {
            assert!(q < self.n, "qubit {q} not allocated");
        }
        if kind.arity() == 2 {
            assert_ne!(qubits[0], qubits[1], "two-qubit location on one qubit");
        }
        if let Some(g) = self.open_segment {
            for &q in &qubits[..kind.arity()] {
                if !self.segments[g].qubits.contains(&q) {
                    self.segments[g].qubits.push(q);
                }
            }
        }
        self.pending.push(Pending::Loc {
            kind,
            qubits,
            instance: self.current_instance(),
            segment: self.open_segment,
            measurement,
        });
    }

    pub fn prep(&mut self, q: usize, basis: Basis) {
        self.push_loc(LocationKind::Prep(basis), [q, q], None);
    }

    pub fn gate1(&mut self, g: Gate1, q: usize) {
        self.push_loc(LocationKind::Gate1(g), [q, q], None);
    }

    pub fn gate2(&mut self, g: Gate2, a: usize, b: usize) {
        self.push_loc(LocationKind::Gate2(g), [a, b], None);
    }

    pub fn cnot(&mut self, control: usize, target: usize) {
        self.gate2(Gate2::Cnot, control, target);
    }

    /// Adds a measurement and returns its index.
    pub fn measure(&mut self, q: usize, basis: Basis) -> usize {
        let m = self.num_measurements;
        self.num_measurements += 1;
        self.push_loc(LocationKind::Measure(basis), [q, q], Some(m));
        m
    }

    pub fn wait(&mut self, q: usize) {
        self.push_loc(LocationKind::Wait, [q, q], None);
    }

    pub fn feed_forward(&mut self, ff: FeedForward) {
        assert!(
            self.open_segment.is_none(),
            "feed-forward inside a verified segment"
        );
        self.feed_forward.push(ff);
        self.pending
            .push(Pending::FeedForward(self.feed_forward.len() - 1));
    }

    pub fn begin_segment(&mut self) -> usize {
        assert!(self.open_segment.is_none(), "segments do not nest");
        self.segments.push(Segment::default());
        let g = self.segments.len() - 1;
        self.open_segment = Some(g);
        g
    }

    /// Closes the open segment; it is accepted when every parity group of
    /// `checks` is even.
    pub fn end_segment(&mut self, checks: Vec<Vec<usize>>) -> usize {
        let g = self.open_segment.take().expect("open segment");
        self.segments[g].checks = checks;
        self.pending.push(Pending::Verify(g));
        g
    }

    pub fn checkpoint(&mut self, label: impl Into<String>, qubits: Vec<usize>) -> usize {
        self.checkpoints.push(Checkpoint {
            label: label.into(),
            qubits,
        });
        let c = self.checkpoints.len() - 1;
        self.pending.push(Pending::Checkpoint(c));
        c
    }

    pub fn gauge(&mut self, gauge: Gauge) {
        self.gauges.push(gauge);
        self.pending.push(Pending::Gauge(self.gauges.len() - 1));
    }

    /// Schedules everything and returns the finished circuit.
    pub fn finish(self) -> Circuit {
        assert!(self.open_segment.is_none(), "unterminated segment");
        let n = self.n;
        let qubits_of = |p: &Pending| -> Vec<usize> {
            match p {
                Pending::Loc { kind, qubits, .. } => qubits[..kind.arity()].to_vec(),
                _ => Vec::new(),
            }
        };
        let items = self.pending.len();
        // Precedence edges `(earlier item, delay)`.
        let mut preds: Vec<Vec<(usize, usize)>> = vec![Vec::new(); items];
        let mut last: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut observers: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut meas_item = vec![0usize; self.num_measurements];
        let mut verify_item = vec![0usize; self.segments.len()];
        for (idx, p) in self.pending.iter().enumerate() {
            let (reads, acts): (Vec<usize>, Vec<usize>) = match p {
                Pending::Loc { .. } => (Vec::new(), qubits_of(p)),
                Pending::FeedForward(i) => (
                    self.feed_forward[*i].sources(),
                    self.feed_forward[*i].targets(),
                ),
                Pending::Verify(g) => {
                    verify_item[*g] = idx;
                    let seg = &self.segments[*g];
                    (
                        seg.checks.iter().flatten().copied().collect(),
                        seg.qubits.clone(),
                    )
                }
                Pending::Checkpoint(c) => (Vec::new(), self.checkpoints[*c].qubits.clone()),
                Pending::Gauge(g) => (Vec::new(), self.gauges[*g].qubits.clone()),
            };
            for m in reads {
                preds[idx].push((meas_item[m], 1));
            }
            let observer = matches!(p, Pending::Checkpoint(_));
            let delay = usize::from(matches!(p, Pending::Loc { .. }));
            for q in acts {
                if let Some(e) = last[q] {
                    preds[idx].push(e);
                }
                if observer {
                    observers[q].push(idx);
                } else {
                    for cp in observers[q].drain(..) {
                        preds[idx].push((cp, 0));
                    }
                    last[q] = Some((idx, delay));
                }
            }
            if let Pending::Loc {
                measurement: Some(m),
                ..
            } = p
            {
                meas_item[*m] = idx;
            }
        }
        let is_loc = |idx: usize| matches!(self.pending[idx], Pending::Loc { .. });
        let mut times = vec![0usize; items];
        for idx in 0..items {
            times[idx] = preds[idx]
                .iter()
                .map(|&(p, d)| times[p] + d)
                .max()
                .unwrap_or(0);
        }
        let depth = (0..items)
            .filter(|&i| is_loc(i))
            .map(|i| times[i] + 1)
            .max()
            .unwrap_or(0);
        if self.schedule == Schedule::Alap {
            let mut latest: Vec<usize> = (0..items)
                .map(|i| {
                    if is_loc(i) {
                        depth.saturating_sub(1)
                    } else {
                        depth
                    }
                })
                .collect();
            for idx in (0..items).rev() {
                for &(p, d) in &preds[idx] {
                    latest[p] = latest[p].min(latest[idx] - d);
                }
            }
            times = latest;
        }
        let timed: Vec<(usize, u8, usize)> = (0..items)
            .map(|i| (times[i], u8::from(is_loc(i)), i))
            .collect();
        let segment_time: Vec<usize> = verify_item.iter().map(|&i| times[i]).collect();

        // Occupancy per qubit, for wait insertion.
        let mut busy: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &(t, class, idx) in &timed {
            if class == 1 {
                for q in qubits_of(&self.pending[idx]) {
                    busy[q].push((t, idx));
                }
            }
        }
        let inputs: BTreeSet<usize> = self.input_qubits.iter().copied().collect();
        let qubit_segment: Vec<Option<usize>> = {
            let mut v = vec![None; n];
            for (g, seg) in self.segments.iter().enumerate() {
                for &q in &seg.qubits {
                    v[q] = Some(g);
                }
            }
            v
        };
        // Waits are (time, qubit, instance, segment).
        let mut waits: Vec<(usize, usize, usize, Option<usize>)> = Vec::new();
        for q in 0..n {
            let slots = &mut busy[q];
            if slots.is_empty() {
                continue;
            }
            slots.sort();
            let instance_of = |idx: usize| match &self.pending[idx] {
                Pending::Loc { instance, .. } => *instance,
                _ => unreachable!(),
            };
            let (last_t, last_idx) = slots[slots.len() - 1];
            let measured = matches!(
                self.pending[last_idx],
                Pending::Loc {
                    kind: LocationKind::Measure(_),
                    ..
                }
            );
            let start = if inputs.contains(&q) && self.schedule == Schedule::Asap {
                0
            } else {
                slots[0].0
            };
            let end = if measured {
                last_t
            } else {
                depth.saturating_sub(1)
            };
            let mut k = 0;
            for t in start..=end {
                while k < slots.len() && slots[k].0 < t {
                    k += 1;
                }
                if k < slots.len() && slots[k].0 == t {
                    continue;
                }
                let instance = if k < slots.len() {
                    instance_of(slots[k].1)
                } else {
                    instance_of(last_idx)
                };
                let segment = qubit_segment[q].filter(|&g| t < segment_time[g]);
                waits.push((t, q, instance, segment));
            }
        }

        // Merge: (time, class, order) with waits ordered after program ops.
        enum Item {
            Pending(usize),
            Wait(usize),
        }
        let mut items: Vec<((usize, u8, usize, usize), Item)> = timed
            .iter()
            .map(|&(t, class, idx)| ((t, class, 0, idx), Item::Pending(idx)))
            .collect();
        for (i, w) in waits.iter().enumerate() {
            items.push(((w.0, 1, 1, w.1), Item::Wait(i)));
        }
        items.sort_by_key(|e| e.0);

        let mut locations = Vec::new();
        let mut steps = Vec::new();
        let mut segments = self.segments.clone();
        for (g, seg) in segments.iter_mut().enumerate() {
            seg.verify_time = segment_time[g];
        }
        let mut measurement_locations = vec![0usize; self.num_measurements];
        for (key, item) in items {
            let t = key.0;
            match item {
                Item::Wait(i) => {
                    let (_, q, instance, segment) = waits[i];
                    let id = locations.len();
                    locations.push(Location {
                        kind: LocationKind::Wait,
                        qubits: [q, q],
                        time: t,
                        instance,
                        segment,
                        measurement: None,
                    });
                    if let Some(g) = segment {
                        segments[g].locations.push(id);
                    }
                    steps.push(Step::Location(id));
                }
                Item::Pending(idx) => match &self.pending[idx] {
                    Pending::Loc {
                        kind,
                        qubits,
                        instance,
                        segment,
                        measurement,
                    } => {
                        let id = locations.len();
                        locations.push(Location {
                            kind: *kind,
                            qubits: *qubits,
                            time: t,
                            instance: *instance,
                            segment: *segment,
                            measurement: *measurement,
                        });
                        if let Some(g) = segment {
                            segments[*g].locations.push(id);
                        }
                        if let Some(m) = measurement {
                            measurement_locations[*m] = id;
                        }
                        steps.push(Step::Location(id));
                    }
                    Pending::FeedForward(i) => steps.push(Step::FeedForward(*i)),
                    Pending::Verify(g) => steps.push(Step::Verify(*g)),
                    Pending::Checkpoint(c) => steps.push(Step::Checkpoint(*c)),
                    Pending::Gauge(g) => steps.push(Step::Gauge(*g)),
                },
            }
        }
        let _ = qubit_segment;
        Circuit {
            n,
            locations,
            steps,
            feed_forward: self.feed_forward,
            segments,
            checkpoints: self.checkpoints,
            gauges: self.gauges,
            blocks: self.blocks,
            instances: self.instances,
            input_qubits: self.input_qubits,
            num_measurements: self.num_measurements,
            measurement_locations,
            depth,
        }
    }
}
