//! Exhaustive fault-injection checks of gadget properties.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::circuit::{Basis, Circuit};
use super::decode::{BlockDecoder, ResidualError};
use super::frame::{FaultCode, FaultPattern, FixedFaults, Frame, FrameSimulator, Propagation};
use super::gadgets::{Gadget, GadgetRole};
use crate::codes::{LogicalClass, PauliLeaderTable};
use crate::error::{Error, Result};
use crate::pauli::{paulis_of_weight, PauliOperator};

/// Gadget contracts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    PrepA,
    PrepB,
    GateA,
    GateB,
    Meas,
    EcA,
    EcB,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::PrepA,
        Property::PrepB,
        Property::GateA,
        Property::GateB,
        Property::Meas,
        Property::EcA,
        Property::EcB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::PrepA => "prepa",
            Property::PrepB => "prepb",
            Property::GateA => "gatea",
            Property::GateB => "gateb",
            Property::Meas => "meas",
            Property::EcA => "eca",
            Property::EcB => "ecb",
        }
    }

    pub fn parse(s: &str) -> Option<Property> {
        let lower = s.to_ascii_lowercase().replace(['-', '_', ' '], "");
        Property::ALL.into_iter().find(|p| p.name() == lower)
    }

    /// Whether the property is defined for a gadget of this role.
    pub fn applies_to(self, role: GadgetRole) -> bool {
        matches!(
            (self, role),
            (Property::PrepA | Property::PrepB, GadgetRole::Prep(_))
                | (
                    Property::GateA | Property::GateB,
                    GadgetRole::Gate(_) | GadgetRole::Wait
                )
                | (Property::Meas, GadgetRole::Meas(_))
                | (Property::EcA | Property::EcB, GadgetRole::Ec)
        )
    }
}

/// Default bound on the number of enumerated cases.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    /// Total budget: faults plus input error weight.
    pub t: usize,
    pub cap: u64,
    /// This worker handles the cases whose index is `shard` mod `jobs`.
    pub shard: usize,
    pub jobs: usize,
}

impl CheckOptions {
    pub fn new(t: usize) -> Self {
        CheckOptions {
            t,
            cap: DEFAULT_ENUMERATION_CAP,
            shard: 0,
            jobs: 1,
        }
    }

    pub fn shard(mut self, shard: usize, jobs: usize) -> Self {
        assert!(jobs >= 1 && shard < jobs, "bad shard");
        self.shard = shard;
        self.jobs = jobs;
        self
    }
}

/// A failing case: input residuals and faults that replay the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Position in the deterministic case order.
    pub index: u64,
    pub inputs: Vec<ResidualError>,
    pub faults: FaultPattern,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetCheckReport {
    pub gadget: String,
    pub code: String,
    pub property: Property,
    pub t: usize,
    pub cases: u64,
    pub rejected: u64,
    pub failures: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

impl GadgetCheckReport {
    /// Combines shard reports; the counterexample with the smallest index
    /// wins, so the result does not depend on the shard count.
    pub fn merge(mut self, other: GadgetCheckReport) -> GadgetCheckReport {
        self.cases += other.cases;
        self.rejected += other.rejected;
        self.failures += other.failures;
        self.passed &= other.passed;
        self.counterexample = match (self.counterexample.take(), other.counterexample) {
            (Some(a), Some(b)) => Some(if a.index <= b.index { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Inputs of one case: a residual per input block and the weight they use
/// from the budget.
struct InputConfig {
    paulis: Vec<PauliOperator>,
    weight: usize,
}

fn low_weight_configs(blocks: usize, n: usize, budget: usize) -> Vec<InputConfig> {
    let mut out = vec![InputConfig {
        paulis: Vec::new(),
        weight: 0,
    }];
    for _ in 0..blocks {
        let mut next = Vec::new();
        for cfg in &out {
            for w in 0..=budget - cfg.weight {
                for p in paulis_of_weight(n, w) {
                    let mut paulis = cfg.paulis.clone();
                    paulis.push(p);
                    next.push(InputConfig {
                        paulis,
                        weight: cfg.weight + w,
                    });
                }
            }
        }
        out = next;
    }
    out
}

fn leader_configs(table: &PauliLeaderTable, generators: usize) -> Vec<InputConfig> {
    let mut seen: Vec<PauliOperator> = Vec::new();
    for s in 0..1usize << generators {
        let l = table.leader_index(s);
        if !seen.contains(l) {
            seen.push(l.clone());
        }
    }
    seen.into_iter()
        .map(|p| InputConfig {
            paulis: vec![p],
            weight: 0,
        })
        .collect()
}

/// Number of ways to place exactly `s` faults: the elementary symmetric
/// polynomial of the per-location type counts.
pub fn fault_set_count(types: &[u8], s: usize) -> u128 {
    let mut e = vec![0u128; s + 1];
    e[0] = 1;
    for &k in types {
        for j in (1..=s).rev() {
            e[j] = e[j].saturating_add(e[j - 1].saturating_mul(k as u128));
        }
    }
    e[s]
}

/// Calls `f` on every set of exactly `s` faults, in a fixed order.
pub fn for_each_fault_set(types: &[u8], s: usize, f: &mut impl FnMut(&[(usize, FaultCode)])) {
    fn rec(
        types: &[u8],
        start: usize,
        left: usize,
        cur: &mut Vec<(usize, FaultCode)>,
        f: &mut impl FnMut(&[(usize, FaultCode)]),
    ) {
        if left == 0 {
            f(cur);
            return;
        }
        for loc in start..=types.len() - left {
            let codes: &[FaultCode] = if types[loc] == 15 { &ALL15 } else { &ALL3 };
            for &c in codes {
                cur.push((loc, c));
                rec(types, loc + 1, left - 1, cur, f);
                cur.pop();
            }
        }
    }
    if s > types.len() {
        return;
    }
    let mut cur = Vec::with_capacity(s);
    rec(types, 0, s, &mut cur, f);
}

const ALL3: [FaultCode; 3] = [1, 2, 3];
const ALL15: [FaultCode; 15] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15];

pub(crate) fn location_types(c: &Circuit) -> Vec<u8> {
    c.locations
        .iter()
        .map(|l| l.kind.fault_types() as u8)
        .collect()
}

pub(crate) fn input_frame(gadget: &Gadget, paulis: &[PauliOperator]) -> Frame {
    let mut f = Frame::identity(gadget.circuit.n);
    for (b, p) in gadget.inputs.iter().zip(paulis) {
        f.apply_on(&gadget.circuit.blocks[*b].qubits, p);
    }
    f
}

/// Decoded logical state of the outputs plus the logical readouts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LogicalOutcome {
    pub classes: Vec<LogicalClass>,
    pub readouts: Vec<bool>,
}

pub(crate) fn logical_outcome(
    gadget: &Gadget,
    decoder: &BlockDecoder,
    run: &Propagation,
) -> LogicalOutcome {
    LogicalOutcome {
        classes: gadget
            .outputs
            .iter()
            .map(|&b| decoder.ideal_decode(&run.frame.restrict(&gadget.circuit.blocks[b].qubits)))
            .collect(),
        readouts: gadget
            .readouts
            .iter()
            .map(|r| r.value(&run.flips))
            .collect(),
    }
}

fn describe(inputs: &[PauliOperator], faults: usize, why: &str) -> String {
    let labels: Vec<String> = inputs.iter().map(|p| p.to_label()).collect();
    alloc::format!("{why} (inputs [{}], {faults} faults)", labels.join(", "))
}

/// Checks one property of a gadget by enumerating every input residual and
/// fault set allowed by the budget; only this worker's shard is evaluated.
pub fn check_property_with(
    gadget: &Gadget,
    property: Property,
    opts: CheckOptions,
) -> Result<GadgetCheckReport> {
    if !property.applies_to(gadget.role) {
        return Err(Error::Domain(alloc::format!(
            "property {} does not apply to gadget {}",
            property.name(),
            gadget.name
        )));
    }
    let code = &gadget.code;
    let decoder = BlockDecoder::new(code)?;
    let circuit = &gadget.circuit;
    let sim = FrameSimulator::new(circuit);
    let types = location_types(circuit);
    let t = opts.t;

    let configs = match property {
        Property::PrepA | Property::PrepB => low_weight_configs(0, code.n(), t),
        Property::EcA => leader_configs(decoder.table(), code.num_generators()),
        _ => low_weight_configs(gadget.inputs.len(), code.n(), t),
    };
    let fault_budget = |cfg: &InputConfig| {
        if property == Property::EcA {
            t
        } else {
            t - cfg.weight
        }
    };

    let mut total: u128 = 0;
    for cfg in &configs {
        for s in 0..=fault_budget(cfg) {
            total = total.saturating_add(fault_set_count(&types, s));
        }
    }
    if total > opts.cap as u128 {
        return Err(Error::ResourceLimit {
            what: "fault enumeration cases",
            size: usize::try_from(total).unwrap_or(usize::MAX),
            limit: opts.cap as usize,
        });
    }

    let mut report = GadgetCheckReport {
        gadget: gadget.name.clone(),
        code: code.name().into(),
        property,
        t,
        cases: 0,
        rejected: 0,
        failures: 0,
        passed: true,
        counterexample: None,
    };
    let mut index: u64 = 0;
    let prep_basis = match gadget.role {
        GadgetRole::Prep(b) => Some(b),
        _ => None,
    };
    for cfg in &configs {
        let input = input_frame(gadget, &cfg.paulis);
        let expected = if matches!(property, Property::GateB | Property::EcB | Property::Meas) {
            let reps: Vec<PauliOperator> = cfg
                .paulis
                .iter()
                .map(|p| code.logical_operator(&decoder.ideal_decode(p)))
                .collect();
            let clean = sim.run(
                Some(&input_frame(gadget, &reps)),
                &mut FixedFaults::new(&[]),
            );
            Some(logical_outcome(gadget, &decoder, &clean))
        } else {
            None
        };
        for s in 0..=fault_budget(cfg) {
            let mut visit = |faults: &[(usize, FaultCode)]| {
                let my = index % opts.jobs as u64 == opts.shard as u64;
                let this = index;
                index += 1;
                if !my {
                    return;
                }
                report.cases += 1;
                let run = sim.run(Some(&input), &mut FixedFaults::new(faults));
                if run.retries > 0 {
                    report.rejected += 1;
                }
                let outputs: Vec<PauliOperator> = gadget
                    .outputs
                    .iter()
                    .map(|&b| run.frame.restrict(&circuit.blocks[b].qubits))
                    .collect();
                let failure: Option<String> = match property {
                    Property::PrepA | Property::EcA | Property::GateA => {
                        let bound = if property == Property::GateA {
                            s + cfg.weight
                        } else {
                            s
                        };
                        outputs
                            .iter()
                            .map(|e| decoder.filter_weight(e))
                            .find(|&w| w > bound)
                            .map(|w| alloc::format!("output needs {w} corrections, bound {bound}"))
                    }
                    Property::PrepB => {
                        let class = decoder.ideal_decode(&outputs[0]);
                        let wrong = match prep_basis {
                            Some(Basis::Z) => !class.x.is_zero(),
                            _ => !class.z.is_zero(),
                        };
                        wrong.then(|| {
                            String::from("prepared state decodes to the wrong logical state")
                        })
                    }
                    Property::GateB | Property::EcB | Property::Meas => {
                        let got = logical_outcome(gadget, &decoder, &run);
                        (Some(&got) != expected.as_ref())
                            .then(|| String::from("logical output differs from the ideal decode"))
                    }
                };
                if run.aborted {
                    report.failures += 1;
                    report.passed = false;
                } else if let Some(why) = failure {
                    report.failures += 1;
                    report.passed = false;
                    if report.counterexample.is_none() {
                        report.counterexample = Some(Counterexample {
                            index: this,
                            inputs: gadget
                                .inputs
                                .iter()
                                .zip(&cfg.paulis)
                                .map(|(&block, p)| ResidualError {
                                    block,
                                    pauli: p.clone(),
                                })
                                .collect(),
                            faults: FaultPattern::decode(circuit, faults),
                            detail: describe(&cfg.paulis, faults.len(), &why),
                        });
                    }
                }
            };
            for_each_fault_set(&types, s, &mut visit);
        }
    }
    Ok(report)
}

/// Single-threaded [`check_property_with`].
pub fn check_property(gadget: &Gadget, property: Property, t: usize) -> Result<GadgetCheckReport> {
    check_property_with(gadget, property, CheckOptions::new(t))
}

/// Replays a counterexample, returning the output residuals.
pub fn replay(gadget: &Gadget, cx: &Counterexample) -> Result<Vec<ResidualError>> {
    let paulis: Vec<PauliOperator> = gadget
        .inputs
        .iter()
        .map(|&b| {
            cx.inputs
                .iter()
                .find(|r| r.block == b)
                .map(|r| r.pauli.clone())
                .unwrap_or_else(|| PauliOperator::identity(gadget.code.n()))
        })
        .collect();
    let run = FrameSimulator::new(&gadget.circuit)
        .run_pattern(Some(&input_frame(gadget, &paulis)), &cx.faults)?;
    Ok(gadget
        .outputs
        .iter()
        .map(|&b| ResidualError {
            block: b,
            pauli: run.frame.restrict(&gadget.circuit.blocks[b].qubits),
        })
        .collect())
}

/// Result of the Steane EC support check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportClaimReport {
    pub gadget: String,
    pub cases: u64,
    pub violations: u64,
    pub counterexample: Option<Counterexample>,
}

impl SupportClaimReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn merge(mut self, other: SupportClaimReport) -> SupportClaimReport {
        self.cases += other.cases;
        self.violations += other.violations;
        self.counterexample = match (self.counterexample.take(), other.counterexample) {
            (Some(a), Some(b)) => Some(if a.index <= b.index { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Largest mask searched for an equivalent error.
const MAX_MASK: usize = 10;

/// For every input syndrome leader and every single fault, the output of a
/// Steane EC must be within errors on the fault's positions of a codeword.
/// A fault inside a verified ancilla counts the support of the ancilla's
/// error (reduced modulo the ancilla state's stabilizer); any other fault
/// counts the block positions of its qubits.
pub fn check_support_claim(gadget: &Gadget, opts: CheckOptions) -> Result<SupportClaimReport> {
    if gadget.ancillas.is_empty() || gadget.outputs.len() != 1 {
        return Err(Error::Domain(alloc::format!(
            "gadget {} has no Steane ancilla records",
            gadget.name
        )));
    }
    let code = &gadget.code;
    let n = code.n();
    let decoder = BlockDecoder::new(code)?;
    let circuit = &gadget.circuit;
    let sim = FrameSimulator::new(circuit);
    let types = location_types(circuit);
    let block_map = circuit.block_map();
    let out_qubits = &circuit.blocks[gadget.outputs[0]].qubits;
    let configs = leader_configs(decoder.table(), code.num_generators());
    let mut report = SupportClaimReport {
        gadget: gadget.name.clone(),
        cases: 0,
        violations: 0,
        counterexample: None,
    };
    let mut index = 0u64;
    let mut error: Option<Error> = None;
    for cfg in &configs {
        let input = input_frame(gadget, &cfg.paulis);
        for_each_fault_set(&types, 1, &mut |faults| {
            let this = index;
            index += 1;
            if this % opts.jobs as u64 != opts.shard as u64 || error.is_some() {
                return;
            }
            report.cases += 1;
            let run = sim.run(Some(&input), &mut FixedFaults::new(faults));
            let loc = &circuit.locations[faults[0].0];
            let mut mask = vec![false; n];
            let record = loc
                .segment
                .and_then(|g| gadget.ancillas.iter().find(|r| r.segment == g));
            match record {
                Some(r) => match super::decode::reduce_modulo_group(
                    &run.checkpoints[r.checkpoint],
                    &r.group,
                ) {
                    Ok(reduced) => reduced.support().iter_ones().for_each(|i| mask[i] = true),
                    Err(e) => error = Some(e),
                },
                None => {
                    for &q in loc.qubits() {
                        if let Some((b, pos)) = block_map[q] {
                            if circuit.blocks[b].qubits.len() == n {
                                mask[pos] = true;
                            }
                        }
                    }
                }
            }
            let out = run.frame.restrict(out_qubits);
            let positions: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
            if positions.len() > MAX_MASK {
                error = Some(Error::ResourceLimit {
                    what: "support mask size",
                    size: positions.len(),
                    limit: MAX_MASK,
                });
                return;
            }
            let target = decoder.syndrome(&out);
            let found = (0..1u64 << (2 * positions.len())).any(|code_word| {
                let mut f = PauliOperator::identity(n);
                for (j, &pos) in positions.iter().enumerate() {
                    let k = (code_word >> (2 * j)) & 3;
                    f.set(
                        pos,
                        [
                            crate::PauliKind::I,
                            crate::PauliKind::X,
                            crate::PauliKind::Y,
                            crate::PauliKind::Z,
                        ][k as usize],
                    );
                }
                decoder.syndrome(&f) == target
            });
            if !found {
                report.violations += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some(Counterexample {
                        index: this,
                        inputs: vec![ResidualError {
                            block: gadget.inputs[0],
                            pauli: cfg.paulis[0].clone(),
                        }],
                        faults: FaultPattern::decode(circuit, faults),
                        detail: alloc::format!(
                            "output {} is not supported on positions {positions:?}",
                            out.to_label()
                        ),
                    });
                }
            }
        });
    }
    match error {
        Some(e) => Err(e),
        None => Ok(report),
    }
}
