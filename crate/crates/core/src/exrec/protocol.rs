//! Encoded protocols: every location of an unencoded circuit replaced by its
//! gadget, with an error-correction gadget between consecutive locations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::codes::StabilizerCode;
use crate::error::{Error, Result};
use crate::ft::circuit::{
    Basis, Circuit, CircuitBuilder, Gate1, Gate2, InstanceKind, LocationKind, LogicalReadout,
    Schedule, Step,
};
use crate::ft::frame::{FaultCode, Propagation};
use crate::ft::{BlockDecoder, CodeKit, EcKind, LogicalGate, PrepStrategy};

/// Which gadget families implement the encoded locations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetSet {
    pub ec: EcKind,
    pub prep: PrepStrategy,
}

impl Default for GadgetSet {
    fn default() -> Self {
        GadgetSet {
            ec: EcKind::Steane,
            prep: PrepStrategy::VerifyDiscard,
        }
    }
}

/// Extra error correction on the circuit boundary. Both are off for a
/// complete protocol; a standalone exRec turns both on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ProtocolOptions {
    pub input_ec: bool,
    pub output_ec: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExRecKind {
    Prep,
    Gate,
    Meas,
    Wait,
}

/// An extended rectangle: a location's gadget with the error corrections
/// before and after it. Entries are instance ids of the encoded circuit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExRec {
    /// Location id in the unencoded circuit.
    pub location: usize,
    pub kind: ExRecKind,
    pub label: String,
    pub gadget: usize,
    pub leading: Vec<usize>,
    pub trailing: Vec<usize>,
}

impl ExRec {
    pub fn instances(&self) -> impl Iterator<Item = usize> + '_ {
        self.leading
            .iter()
            .copied()
            .chain(core::iter::once(self.gadget))
            .chain(self.trailing.iter().copied())
    }
}

/// Per-exRec verdict for one fault configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExRecStatus {
    pub good: bool,
    /// Some trailing EC was handed to a later bad exRec.
    pub truncated: bool,
    /// Faults counted against this exRec after truncation.
    pub faults: usize,
}

/// An encoded simulation of an unencoded circuit.
#[derive(Clone, Debug)]
pub struct Protocol {
    pub original: Circuit,
    pub encoded: Circuit,
    pub exrecs: Vec<ExRec>,
    /// Logical readout per measurement of the unencoded circuit.
    pub readouts: Vec<LogicalReadout>,
    /// Final blocks of qubits that are never measured.
    pub outputs: Vec<usize>,
    decoder: BlockDecoder,
    instance_locations: Vec<Vec<usize>>,
}

fn missing_gadget(kind: LocationKind, code: &StabilizerCode) -> Error {
    Error::Unsupported(format!(
        "no fault-tolerant gadget for location '{}' on code {}",
        kind.name(),
        code.name()
    ))
}

fn logical_gate(kind: LocationKind, code: &StabilizerCode) -> Result<LogicalGate> {
    Ok(match kind {
        LocationKind::Gate1(Gate1::H) => LogicalGate::H,
        LocationKind::Gate1(Gate1::P) => LogicalGate::P,
        LocationKind::Gate1(Gate1::X) => LogicalGate::X,
        LocationKind::Gate1(Gate1::Z) => LogicalGate::Z,
        LocationKind::Gate2(Gate2::Cnot) => LogicalGate::Cnot,
        _ => return Err(missing_gadget(kind, code)),
    })
}

/// Encodes `original` with `code`. The unencoded circuit may hold only
/// locations; its qubits start with a preparation unless they are inputs.
pub fn build_protocol(
    original: &Circuit,
    code: &StabilizerCode,
    gadgets: GadgetSet,
    options: ProtocolOptions,
) -> Result<Protocol> {
    original.validate()?;
    let kit = CodeKit::new(code)?;
    let mut order = Vec::with_capacity(original.steps.len());
    for s in &original.steps {
        match *s {
            Step::Location(id) => order.push(id),
            _ => {
                return Err(Error::Unsupported(
                    "the unencoded circuit may contain only locations".into(),
                ))
            }
        }
    }
    for &id in &order {
        let kind = original.locations[id].kind;
        match kind {
            LocationKind::Prep(_) | LocationKind::Measure(_) | LocationKind::Wait => {}
            _ => {
                let g = logical_gate(kind, code)?;
                kit.check_transversal(g)
                    .map_err(|_| missing_gadget(kind, code))?;
            }
        }
    }

    let n = original.n;
    let mut remaining = vec![0usize; n];
    for &id in &order {
        for &q in original.locations[id].qubits() {
            remaining[q] += 1;
        }
    }
    let inputs: BTreeSet<usize> = original.input_qubits.iter().copied().collect();

    let mut b = CircuitBuilder::new();
    b.set_schedule(Schedule::Alap);
    let mut block: Vec<Option<usize>> = vec![None; n];
    let mut pending_ec: Vec<Option<usize>> = vec![None; n];
    let mut ec_count = 0usize;
    let mut emit_ec = |b: &mut CircuitBuilder, q: usize, blk: usize| -> Result<(usize, usize)> {
        let inst = b.begin_instance(InstanceKind::Ec, format!("ec-q{q}-{ec_count}"), vec![blk]);
        ec_count += 1;
        let out = kit.emit_ec(b, gadgets.ec, blk)?;
        b.end_instance();
        Ok((inst, out))
    };

    for &q in &inputs {
        let blk = b.add_block(format!("q{q}"), kit.n());
        b.mark_input(blk);
        block[q] = Some(blk);
    }
    if options.input_ec {
        for &q in &inputs {
            if remaining[q] > 0 {
                let (inst, out) = emit_ec(&mut b, q, block[q].expect("input block"))?;
                block[q] = Some(out);
                pending_ec[q] = Some(inst);
            }
        }
    }

    let mut exrecs = Vec::with_capacity(order.len());
    let mut readouts: Vec<Option<LogicalReadout>> = vec![None; original.num_measurements];
    for &id in &order {
        let loc = &original.locations[id];
        let qs = loc.qubits().to_vec();
        let leading: Vec<usize> = qs.iter().filter_map(|&q| pending_ec[q].take()).collect();
        let live = |q: usize| {
            block[q]
                .ok_or_else(|| Error::Domain(format!("qubit {q} is used before it is prepared")))
        };
        let label = format!("{}@{}", loc.kind.name(), id);
        let (kind, gadget) = match loc.kind {
            LocationKind::Prep(basis) => {
                let blk = b.add_block(format!("q{}", qs[0]), kit.n());
                let inst = b.begin_instance(InstanceKind::Prep, label.clone(), vec![blk]);
                let qubits = b.block_qubits(blk).to_vec();
                kit.emit_prep(&mut b, &qubits, basis, gadgets.prep)?;
                block[qs[0]] = Some(blk);
                (ExRecKind::Prep, inst)
            }
            LocationKind::Measure(basis) => {
                let blk = live(qs[0])?;
                let inst = b.begin_instance(InstanceKind::Meas, label.clone(), vec![blk]);
                let r = kit.emit_measure(&mut b, blk, basis)?;
                readouts[loc.measurement.expect("measurement index")] = Some(r);
                block[qs[0]] = None;
                (ExRecKind::Meas, inst)
            }
            LocationKind::Wait => {
                let blk = live(qs[0])?;
                let inst = b.begin_instance(InstanceKind::Wait, label.clone(), vec![blk]);
                kit.emit_wait(&mut b, blk);
                (ExRecKind::Wait, inst)
            }
            kind => {
                let blocks = qs.iter().map(|&q| live(q)).collect::<Result<Vec<_>>>()?;
                let inst = b.begin_instance(InstanceKind::Gate, label.clone(), blocks.clone());
                kit.emit_transversal(&mut b, logical_gate(kind, code)?, &blocks)?;
                (ExRecKind::Gate, inst)
            }
        };
        b.end_instance();
        let mut trailing = Vec::new();
        for &q in &qs {
            remaining[q] -= 1;
            if kind == ExRecKind::Meas {
                continue;
            }
            if remaining[q] > 0 || options.output_ec {
                let (inst, out) = emit_ec(&mut b, q, block[q].expect("live block"))?;
                block[q] = Some(out);
                trailing.push(inst);
                if remaining[q] > 0 {
                    pending_ec[q] = Some(inst);
                }
            }
        }
        exrecs.push(ExRec {
            location: id,
            kind,
            label,
            gadget,
            leading,
            trailing,
        });
    }

    let outputs = block.iter().flatten().copied().collect();
    let encoded = b.finish();
    let mut instance_locations = vec![Vec::new(); encoded.instances.len()];
    for (id, l) in encoded.locations.iter().enumerate() {
        instance_locations[l.instance].push(id);
    }
    Ok(Protocol {
        original: original.clone(),
        encoded,
        exrecs,
        readouts: readouts
            .into_iter()
            .map(|r| r.expect("every measurement is encoded"))
            .collect(),
        outputs,
        decoder: BlockDecoder::new(code)?,
        instance_locations,
    })
}

impl Protocol {
    pub fn code(&self) -> &StabilizerCode {
        self.decoder.code()
    }

    pub fn num_locations(&self) -> usize {
        self.encoded.locations.len()
    }

    /// Encoded location ids of one exRec, sorted.
    pub fn exrec_locations(&self, e: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.exrecs[e]
            .instances()
            .flat_map(|i| self.instance_locations[i].iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    pub fn instance_locations(&self, instance: usize) -> &[usize] {
        &self.instance_locations[instance]
    }

    /// A run fails when a logical measurement flips, an output block is left
    /// with a logical error after ideal decoding, or a verification loop
    /// gave up.
    pub fn failed(&self, run: &Propagation) -> bool {
        if run.aborted || self.readouts.iter().any(|r| r.value(&run.flips)) {
            return true;
        }
        self.outputs.iter().any(|&blk| {
            let e = run.frame.restrict(&self.encoded.blocks[blk].qubits);
            !self.decoder.ideal_decode(&e).is_identity()
        })
    }

    /// Marks exRecs good or bad, working back from the end of the circuit.
    /// An exRec is bad when more than `t` faults fall in its locations; a
    /// bad exRec's leading ECs are then dropped from the exRecs before it.
    /// `faults` holds `(location, code)` pairs with nonzero codes.
    pub fn classify_exrecs(&self, faults: &[(usize, FaultCode)], t: usize) -> Vec<ExRecStatus> {
        let mut per_instance = vec![0usize; self.instance_locations.len()];
        for &(loc, code) in faults {
            if code != 0 {
                per_instance[self.encoded.locations[loc].instance] += 1;
            }
        }
        let mut dropped: BTreeSet<usize> = BTreeSet::new();
        let mut out = vec![
            ExRecStatus {
                good: true,
                truncated: false,
                faults: 0
            };
            self.exrecs.len()
        ];
        for (e, ex) in self.exrecs.iter().enumerate().rev() {
            let kept = ex.trailing.iter().filter(|i| !dropped.contains(i));
            let count = per_instance[ex.gadget]
                + ex.leading.iter().map(|&i| per_instance[i]).sum::<usize>()
                + kept.map(|&i| per_instance[i]).sum::<usize>();
            let good = count <= t;
            if !good {
                dropped.extend(ex.leading.iter().copied());
            }
            out[e] = ExRecStatus {
                good,
                truncated: ex.trailing.iter().any(|i| dropped.contains(i)),
                faults: count,
            };
        }
        out
    }

    /// Locations counted against each exRec under `statuses`.
    pub fn counted_locations(&self, statuses: &[ExRecStatus]) -> Vec<Vec<usize>> {
        let mut dropped: BTreeSet<usize> = BTreeSet::new();
        for (ex, s) in self.exrecs.iter().zip(statuses) {
            if !s.good {
                dropped.extend(ex.leading.iter().copied());
            }
        }
        self.exrecs
            .iter()
            .map(|ex| {
                let mut v: Vec<usize> = ex
                    .leading
                    .iter()
                    .chain(core::iter::once(&ex.gadget))
                    .copied()
                    .chain(ex.trailing.iter().copied().filter(|i| !dropped.contains(i)))
                    .flat_map(|i| self.instance_locations[i].iter().copied())
                    .collect();
                v.sort_unstable();
                v
            })
            .collect()
    }
}

/// Two preparations, a CNOT, an `H` on the control, and measurements of
/// both qubits.
pub fn sample_circuit() -> Circuit {
    let mut b = CircuitBuilder::new();
    let q = b.add_qubits(2);
    b.prep(q[0], Basis::Z);
    b.prep(q[1], Basis::Z);
    b.cnot(q[0], q[1]);
    b.gate1(Gate1::H, q[0]);
    b.measure(q[1], Basis::Z);
    b.measure(q[0], Basis::Z);
    b.finish()
}

/// One CNOT between two input qubits.
pub fn cnot_circuit() -> Circuit {
    let mut b = CircuitBuilder::new();
    let c = b.add_block("control", 1);
    let t = b.add_block("target", 1);
    b.mark_input(c);
    b.mark_input(t);
    let (qc, qt) = (b.block_qubits(c)[0], b.block_qubits(t)[0]);
    b.cnot(qc, qt);
    b.finish()
}

/// The standalone CNOT exRec: ECs on both inputs, transversal CNOT, ECs on
/// both outputs.
pub fn cnot_exrec(code: &StabilizerCode, gadgets: GadgetSet) -> Result<Protocol> {
    build_protocol(
        &cnot_circuit(),
        code,
        gadgets,
        ProtocolOptions {
            input_ec: true,
            output_ec: true,
        },
    )
}
