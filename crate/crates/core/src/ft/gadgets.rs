//! Gadget constructions on top of [`CircuitBuilder`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::circuit::{
    Basis, Circuit, CircuitBuilder, Consensus, FeedForward, Gate1, Gate2, Gauge, InstanceKind,
    LogicalReadout,
};
use crate::bits::{BitMatrix, BitVec};
use crate::codes::{BundledCode, CssView, PauliLeaderTable, StabilizerCode};
use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliOperator};

/// Logical operations implemented by transversal gadgets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogicalGate {
    X,
    Z,
    H,
    P,
    Cnot,
}

impl LogicalGate {
    pub fn num_blocks(self) -> usize {
        if self == LogicalGate::Cnot {
            2
        } else {
            1
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LogicalGate::X => "x",
            LogicalGate::Z => "z",
            LogicalGate::H => "h",
            LogicalGate::P => "p",
            LogicalGate::Cnot => "cnot",
        }
    }
}

/// How a logical `|0̄⟩` or `|+̄⟩` is prepared.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrepStrategy {
    /// Start from a product state and measure the stabilizer extended by
    /// the logical operator, correcting to its unique code state.
    ShorProject,
    /// Encode, then compare against a second encoded copy and discard on any
    /// detected error.
    VerifyDiscard,
}

/// Error-correction gadget family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EcKind {
    Steane,
    Knill,
    Shor { rounds: usize },
}

/// What a gadget implements; decides which properties apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetRole {
    Prep(Basis),
    Gate(LogicalGate),
    Meas(Basis),
    Wait,
    Ec,
}

/// Verified ancilla used by a Steane EC: the checkpoint taken right after
/// its verification and the group its errors are reduced modulo.
#[derive(Clone, Debug)]
pub struct AncillaRecord {
    pub segment: usize,
    pub checkpoint: usize,
    pub block: usize,
    pub group: Vec<PauliOperator>,
}

/// A circuit together with its code-level interface.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub name: String,
    pub code: StabilizerCode,
    pub role: GadgetRole,
    pub circuit: Circuit,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub readouts: Vec<LogicalReadout>,
    /// Steane EC ancillas, for the support claim.
    pub ancillas: Vec<AncillaRecord>,
}

/// Code-specific emitters shared by all gadget constructions.
#[derive(Clone, Debug)]
pub struct CodeKit {
    code: StabilizerCode,
    css: Option<CssView>,
    table: PauliLeaderTable,
    /// Errors the code corrects; sets the default Shor repetitions.
    pub t: usize,
}

impl CodeKit {
    pub fn new(code: &StabilizerCode) -> Result<Self> {
        let violations = code.validate();
        if !violations.is_empty() {
            return Err(Error::Construction(alloc::format!(
                "code {} is not a valid stabilizer code",
                code.name()
            )));
        }
        let d = code.distance()?;
        Ok(CodeKit {
            code: code.clone(),
            css: CssView::new(code).ok(),
            table: PauliLeaderTable::new(code)?,
            t: (d.max(1) - 1) / 2,
        })
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn css(&self) -> Result<&CssView> {
        self.css.as_ref().ok_or_else(|| {
            Error::Unsupported(alloc::format!(
                "code {} has no CSS form with standard logical operators",
                self.code.name()
            ))
        })
    }

    fn single_logical(&self) -> Result<()> {
        if self.code.k() != 1 {
            return Err(Error::Unsupported(alloc::format!(
                "gadgets need one logical qubit; code {} has {}",
                self.code.name(),
                self.code.k()
            )));
        }
        Ok(())
    }

    fn is_seven_qubit(&self) -> bool {
        self.code.generators() == BundledCode::SevenQubit.code().generators()
    }

    /// Unverified CSS encoder of `|0̄⟩` or `|+̄⟩` on fresh qubits.
    pub fn emit_encoder(
        &self,
        b: &mut CircuitBuilder,
        qubits: &[usize],
        basis: Basis,
    ) -> Result<()> {
        let css = self.css()?;
        let mut rows = css.hx.clone();
        if basis == Basis::X {
            for l in &css.logical_x {
                rows.push_row(l.clone())?;
            }
        }
        let ech = rows.echelon();
        for (q, &qubit) in qubits.iter().enumerate() {
            let pivot = ech.pivots.contains(&q);
            b.prep(qubit, if pivot { Basis::X } else { Basis::Z });
        }
        for (row, &p) in ech.matrix.rows().iter().zip(&ech.pivots) {
            for j in row.iter_ones().filter(|&j| j != p) {
                b.cnot(qubits[p], qubits[j]);
            }
        }
        Ok(())
    }

    fn readout(&self, word: Vec<usize>, basis: Basis) -> Result<LogicalReadout> {
        let css = self.css()?;
        Ok(match basis {
            Basis::Z => LogicalReadout {
                word,
                table: css.x_decoder.clone(),
                logical: css.logical_z[0].clone(),
            },
            Basis::X => LogicalReadout {
                word,
                table: css.z_decoder.clone(),
                logical: css.logical_x[0].clone(),
            },
        })
    }

    /// Parity checks accepted by a comparison word: the classical checks
    /// plus the logical operator of the prepared basis.
    fn acceptance_checks(&self, basis: Basis) -> Result<BitMatrix> {
        let css = self.css()?;
        let mut m = match basis {
            Basis::Z => css.hz.clone(),
            Basis::X => css.hx.clone(),
        };
        let logicals = match basis {
            Basis::Z => &css.logical_z,
            Basis::X => &css.logical_x,
        };
        for l in logicals {
            m.push_row(l.clone())?;
        }
        Ok(m)
    }

    /// Verified `|0̄⟩`/`|+̄⟩` on `qubits`: a second encoded copy is coupled
    /// transversally and measured, and the segment is retried unless the
    /// measured word passes every check. Returns the segment id.
    pub fn emit_verified_prep(
        &self,
        b: &mut CircuitBuilder,
        qubits: &[usize],
        basis: Basis,
    ) -> Result<usize> {
        let n = self.n();
        let checks = self.acceptance_checks(basis)?;
        b.begin_segment();
        let copy = b.add_qubits(n);
        self.emit_encoder(b, qubits, basis)?;
        self.emit_encoder(b, &copy, basis)?;
        let mut word = Vec::with_capacity(n);
        for i in 0..n {
            match basis {
                Basis::Z => b.cnot(qubits[i], copy[i]),
                Basis::X => b.cnot(copy[i], qubits[i]),
            }
        }
        for &q in &copy {
            word.push(b.measure(q, basis));
        }
        let groups = checks
            .rows()
            .iter()
            .map(|r| r.iter_ones().map(|i| word[i]).collect())
            .collect();
        Ok(b.end_segment(groups))
    }

    /// `|00…0⟩ + |11…1⟩` on fresh qubits. With `verify` and at least three
    /// qubits, the first and last qubit are compared on an extra ancilla and
    /// the preparation is retried on a mismatch.
    pub fn emit_cat(b: &mut CircuitBuilder, m: usize, verify: bool) -> Vec<usize> {
        let cat = b.add_qubits(m);
        let checked = verify && m >= 3;
        if checked {
            b.begin_segment();
        }
        b.prep(cat[0], Basis::X);
        for &q in &cat[1..] {
            b.prep(q, Basis::Z);
        }
        for w in cat.windows(2) {
            b.cnot(w[0], w[1]);
        }
        if checked {
            let v = b.add_qubits(1)[0];
            b.prep(v, Basis::Z);
            b.cnot(cat[0], v);
            b.cnot(cat[m - 1], v);
            let mv = b.measure(v, Basis::Z);
            b.end_segment(vec![vec![mv]]);
        }
        cat
    }

    /// Repeated cat-state measurement of `generators` on `data`, then the
    /// correction from `table` for the consensus syndrome.
    pub fn emit_shor_rounds(
        b: &mut CircuitBuilder,
        data: &[usize],
        generators: &[PauliOperator],
        table: &PauliLeaderTable,
        rounds: usize,
        rule: Consensus,
    ) {
        let mut record = Vec::with_capacity(rounds);
        for _ in 0..rounds {
            let mut round = Vec::with_capacity(generators.len());
            for g in generators {
                let support: Vec<usize> = g.support().iter_ones().collect();
                let cat = Self::emit_cat(b, support.len(), true);
                for (&c, &i) in cat.iter().zip(&support) {
                    match g.get(i) {
                        PauliKind::X => b.gate2(Gate2::Cnot, c, data[i]),
                        PauliKind::Y => b.gate2(Gate2::Cy, c, data[i]),
                        PauliKind::Z => b.gate2(Gate2::Cz, c, data[i]),
                        PauliKind::I => unreachable!(),
                    }
                }
                if g.sign_bit() {
                    b.gate1(Gate1::Z, cat[0]);
                }
                round.push(cat.iter().map(|&c| b.measure(c, Basis::X)).collect());
            }
            record.push(round);
        }
        b.feed_forward(FeedForward::Syndrome {
            rounds: record,
            rule,
            table: table.clone(),
            targets: data.to_vec(),
        });
    }

    pub fn default_rounds(&self) -> usize {
        2 * self.t + 1
    }

    pub fn emit_shor_ec(&self, b: &mut CircuitBuilder, data: &[usize], rounds: usize) {
        Self::emit_shor_rounds(
            b,
            data,
            self.code.generators(),
            &self.table,
            rounds,
            Consensus::Majority,
        );
    }

    /// Shor-style projection of a product state onto `|0̄⟩`/`|+̄⟩`.
    pub fn emit_shor_project(
        &self,
        b: &mut CircuitBuilder,
        qubits: &[usize],
        basis: Basis,
    ) -> Result<()> {
        self.single_logical()?;
        for &q in qubits {
            b.prep(q, basis);
        }
        self.emit_logical_projection(b, qubits, basis)
    }

    /// Measures the stabilizer together with `Z̄` (or `X̄`) by cat states and
    /// corrects into `|0̄⟩` (or `|+̄⟩`), whatever the block held before.
    pub fn emit_logical_projection(
        &self,
        b: &mut CircuitBuilder,
        qubits: &[usize],
        basis: Basis,
    ) -> Result<()> {
        self.single_logical()?;
        let logical = match basis {
            Basis::Z => self.code.logical_z()[0].clone(),
            Basis::X => self.code.logical_x()[0].clone(),
        };
        let augmented = self.code.augmented(&[logical], "augmented")?;
        let table = PauliLeaderTable::new(&augmented)?;
        Self::emit_shor_rounds(
            b,
            qubits,
            augmented.generators(),
            &table,
            self.default_rounds(),
            Consensus::Repeated(self.t + 1),
        );
        Ok(())
    }

    /// Removes the logical component that leaves a fresh `|0̄⟩`/`|+̄⟩`
    /// unchanged from the frame.
    pub fn emit_gauge(&self, b: &mut CircuitBuilder, qubits: &[usize], basis: Basis) {
        let (test, fix) = match basis {
            Basis::Z => (
                self.code.logical_x()[0].clone(),
                self.code.logical_z()[0].clone(),
            ),
            Basis::X => (
                self.code.logical_z()[0].clone(),
                self.code.logical_x()[0].clone(),
            ),
        };
        b.gauge(Gauge {
            qubits: qubits.to_vec(),
            generators: self.code.generators().to_vec(),
            table: self.table.clone(),
            test,
            fix,
        });
    }

    /// A full preparation gadget body on the block's qubits.
    pub fn emit_prep(
        &self,
        b: &mut CircuitBuilder,
        qubits: &[usize],
        basis: Basis,
        strategy: PrepStrategy,
    ) -> Result<()> {
        self.single_logical()?;
        match strategy {
            PrepStrategy::VerifyDiscard => {
                self.emit_verified_prep(b, qubits, basis)?;
            }
            PrepStrategy::ShorProject => self.emit_shor_project(b, qubits, basis)?,
        }
        self.emit_gauge(b, qubits, basis);
        Ok(())
    }

    /// Steane EC on `data`: bit flips through a verified `|+̄⟩`, phase flips
    /// through a verified `|0̄⟩`. `shift` rotates correction targets and is
    /// nonzero only for the deliberately broken variant.
    fn emit_steane_ec_inner(
        &self,
        b: &mut CircuitBuilder,
        data: &[usize],
        shift: usize,
    ) -> Result<Vec<AncillaRecord>> {
        let css = self.css()?.clone();
        let n = self.n();
        let target = |i: usize| data[(i + shift) % n];
        let mut records = Vec::new();
        let group = |extra: &PauliOperator| {
            let mut g = self.code.generators().to_vec();
            g.push(extra.clone());
            g
        };

        let a1 = b.add_block("steane-anc-x", n);
        let a1q = b.block_qubits(a1).to_vec();
        let seg1 = self.emit_verified_prep(b, &a1q, Basis::X)?;
        let cp1 = b.checkpoint("steane-anc-x", a1q.clone());
        records.push(AncillaRecord {
            segment: seg1,
            checkpoint: cp1,
            block: a1,
            group: group(&self.code.logical_x()[0]),
        });
        for i in 0..n {
            b.cnot(data[i], a1q[i]);
        }
        let word1: Vec<usize> = a1q.iter().map(|&q| b.measure(q, Basis::Z)).collect();
        b.feed_forward(FeedForward::Leader {
            word: word1,
            table: css.x_decoder.clone(),
            kind: PauliKind::X,
            targets: (0..n).map(target).collect(),
        });

        let a2 = b.add_block("steane-anc-z", n);
        let a2q = b.block_qubits(a2).to_vec();
        let seg2 = self.emit_verified_prep(b, &a2q, Basis::Z)?;
        let cp2 = b.checkpoint("steane-anc-z", a2q.clone());
        records.push(AncillaRecord {
            segment: seg2,
            checkpoint: cp2,
            block: a2,
            group: group(&self.code.logical_z()[0]),
        });
        for i in 0..n {
            b.cnot(a2q[i], data[i]);
        }
        let word2: Vec<usize> = a2q.iter().map(|&q| b.measure(q, Basis::X)).collect();
        b.feed_forward(FeedForward::Leader {
            word: word2,
            table: css.z_decoder.clone(),
            kind: PauliKind::Z,
            targets: (0..n).map(target).collect(),
        });
        Ok(records)
    }

    pub fn emit_steane_ec(
        &self,
        b: &mut CircuitBuilder,
        data: &[usize],
    ) -> Result<Vec<AncillaRecord>> {
        self.emit_steane_ec_inner(b, data, 0)
    }

    fn logical_apply(
        qubits: &[usize],
        support: &BitVec,
        kind: PauliKind,
    ) -> Vec<(usize, PauliKind)> {
        support.iter_ones().map(|i| (qubits[i], kind)).collect()
    }

    /// Knill EC: teleports the data block into a fresh block and returns
    /// that block.
    pub fn emit_knill_ec(&self, b: &mut CircuitBuilder, data: &[usize]) -> Result<usize> {
        let css = self.css()?.clone();
        self.single_logical()?;
        let n = self.n();
        let a = b.add_block("knill-a", n);
        let out = b.add_block("knill-out", n);
        let aq = b.block_qubits(a).to_vec();
        let oq = b.block_qubits(out).to_vec();
        self.emit_verified_prep(b, &aq, Basis::X)?;
        self.emit_verified_prep(b, &oq, Basis::Z)?;
        for i in 0..n {
            b.cnot(aq[i], oq[i]);
        }
        for i in 0..n {
            b.cnot(data[i], aq[i]);
        }
        let wd: Vec<usize> = data.iter().map(|&q| b.measure(q, Basis::X)).collect();
        let wa: Vec<usize> = aq.iter().map(|&q| b.measure(q, Basis::Z)).collect();
        b.feed_forward(FeedForward::Logical {
            readout: self.readout(wd, Basis::X)?,
            apply: Self::logical_apply(&oq, &css.logical_z[0], PauliKind::Z),
        });
        b.feed_forward(FeedForward::Logical {
            readout: self.readout(wa, Basis::Z)?,
            apply: Self::logical_apply(&oq, &css.logical_x[0], PauliKind::X),
        });
        Ok(out)
    }

    /// Emits one EC of the given kind and returns the block now holding the
    /// data.
    pub fn emit_ec(&self, b: &mut CircuitBuilder, kind: EcKind, block: usize) -> Result<usize> {
        let q = b.block_qubits(block).to_vec();
        match kind {
            EcKind::Steane => {
                self.emit_steane_ec(b, &q)?;
                Ok(block)
            }
            EcKind::Knill => self.emit_knill_ec(b, &q),
            EcKind::Shor { rounds } => {
                if rounds == 0 {
                    return Err(Error::Domain("Shor EC needs at least one round".into()));
                }
                self.emit_shor_ec(b, &q, rounds);
                Ok(block)
            }
        }
    }

    /// Checks that the code admits the transversal gate.
    pub fn check_transversal(&self, gate: LogicalGate) -> Result<()> {
        self.single_logical()?;
        let ok = match gate {
            LogicalGate::X | LogicalGate::Z => true,
            LogicalGate::H | LogicalGate::P => self.is_seven_qubit(),
            LogicalGate::Cnot => self.css.is_some(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Unsupported(alloc::format!(
                "no transversal {} gate registered for code {}",
                gate.name(),
                self.code.name()
            )))
        }
    }

    /// Transversal implementation on the given blocks (control first).
    pub fn emit_transversal(
        &self,
        b: &mut CircuitBuilder,
        gate: LogicalGate,
        blocks: &[usize],
    ) -> Result<()> {
        self.check_transversal(gate)?;
        if blocks.len() != gate.num_blocks() {
            return Err(Error::Dimension {
                expected: gate.num_blocks(),
                found: blocks.len(),
            });
        }
        let q = b.block_qubits(blocks[0]).to_vec();
        let pauli_gates = |b: &mut CircuitBuilder, p: &PauliOperator| {
            for i in p.support().iter_ones() {
                let g = match p.get(i) {
                    PauliKind::X => Gate1::X,
                    PauliKind::Y => Gate1::Y,
                    PauliKind::Z => Gate1::Z,
                    PauliKind::I => unreachable!(),
                };
                b.gate1(g, q[i]);
            }
        };
        match gate {
            LogicalGate::X => pauli_gates(b, &self.code.logical_x()[0]),
            LogicalGate::Z => pauli_gates(b, &self.code.logical_z()[0]),
            LogicalGate::H => q.iter().for_each(|&x| b.gate1(Gate1::H, x)),
            LogicalGate::P => q.iter().for_each(|&x| b.gate1(Gate1::Pdg, x)),
            LogicalGate::Cnot => {
                let t = b.block_qubits(blocks[1]).to_vec();
                for i in 0..q.len() {
                    b.cnot(q[i], t[i]);
                }
            }
        }
        Ok(())
    }

    /// Transversal measurement with classical decoding of the logical bit.
    pub fn emit_measure(
        &self,
        b: &mut CircuitBuilder,
        block: usize,
        basis: Basis,
    ) -> Result<LogicalReadout> {
        self.css()?;
        self.single_logical()?;
        let q = b.block_qubits(block).to_vec();
        let word: Vec<usize> = q.iter().map(|&x| b.measure(x, basis)).collect();
        self.readout(word, basis)
    }

    /// Logical Z measurement by coupling into a verified `|0̄⟩` that is read
    /// out; the data block is measured in X and discarded.
    pub fn emit_knill_measure(
        &self,
        b: &mut CircuitBuilder,
        block: usize,
    ) -> Result<LogicalReadout> {
        self.css()?;
        self.single_logical()?;
        let n = self.n();
        let a = b.add_block("knill-meas-anc", n);
        let aq = b.block_qubits(a).to_vec();
        let q = b.block_qubits(block).to_vec();
        self.emit_verified_prep(b, &aq, Basis::Z)?;
        for i in 0..n {
            b.cnot(q[i], aq[i]);
        }
        for &x in &q {
            b.measure(x, Basis::X);
        }
        let word: Vec<usize> = aq.iter().map(|&x| b.measure(x, Basis::Z)).collect();
        self.readout(word, Basis::Z)
    }

    pub fn emit_wait(&self, b: &mut CircuitBuilder, block: usize) {
        for q in b.block_qubits(block).to_vec() {
            b.wait(q);
        }
    }
}

fn one_block_gadget(
    kit: &CodeKit,
    name: String,
    role: GadgetRole,
    body: impl FnOnce(
        &CodeKit,
        &mut CircuitBuilder,
        usize,
    ) -> Result<(usize, Vec<LogicalReadout>, Vec<AncillaRecord>)>,
) -> Result<Gadget> {
    let mut b = CircuitBuilder::new();
    let data = b.add_block("data", kit.n());
    b.mark_input(data);
    let kind = match role {
        GadgetRole::Ec => InstanceKind::Ec,
        GadgetRole::Meas(_) => InstanceKind::Meas,
        GadgetRole::Wait => InstanceKind::Wait,
        GadgetRole::Prep(_) => InstanceKind::Prep,
        GadgetRole::Gate(_) => InstanceKind::Gate,
    };
    b.begin_instance(kind, name.clone(), vec![data]);
    let (out, readouts, ancillas) = body(kit, &mut b, data)?;
    b.end_instance();
    let outputs = if matches!(role, GadgetRole::Meas(_)) {
        vec![]
    } else {
        vec![out]
    };
    Ok(Gadget {
        name,
        code: kit.code.clone(),
        role,
        circuit: b.finish(),
        inputs: vec![data],
        outputs,
        readouts,
        ancillas,
    })
}

/// Transversal logical gate; `H̄` and `P̄` only for the seven-qubit code
/// (`P̄` is `P†` on every qubit).
pub fn transversal_gate(code: &StabilizerCode, gate: LogicalGate) -> Result<Gadget> {
    let kit = CodeKit::new(code)?;
    kit.check_transversal(gate)?;
    let name = alloc::format!("transversal-{}", gate.name());
    if gate == LogicalGate::Cnot {
        let mut b = CircuitBuilder::new();
        let c = b.add_block("control", kit.n());
        let t = b.add_block("target", kit.n());
        b.mark_input(c);
        b.mark_input(t);
        b.begin_instance(InstanceKind::Gate, name.clone(), vec![c, t]);
        kit.emit_transversal(&mut b, gate, &[c, t])?;
        b.end_instance();
        return Ok(Gadget {
            name,
            code: code.clone(),
            role: GadgetRole::Gate(gate),
            circuit: b.finish(),
            inputs: vec![c, t],
            outputs: vec![c, t],
            readouts: vec![],
            ancillas: vec![],
        });
    }
    one_block_gadget(&kit, name, GadgetRole::Gate(gate), |kit, b, d| {
        kit.emit_transversal(b, gate, &[d])?;
        Ok((d, vec![], vec![]))
    })
}

/// Cat-state preparation on `m` qubits as a standalone circuit with one
/// block named `cat`.
pub fn cat_state_circuit(m: usize, verify: bool) -> Result<Circuit> {
    if m < 2 {
        return Err(Error::Domain(alloc::format!(
            "cat state needs at least 2 qubits, got {m}"
        )));
    }
    let mut b = CircuitBuilder::new();
    let cat = CodeKit::emit_cat(&mut b, m, verify);
    let mut c = b.finish();
    c.blocks.push(super::circuit::Block {
        name: "cat".into(),
        qubits: cat,
    });
    Ok(c)
}

/// Shor EC with `repetitions` full syndrome rounds and majority voting.
pub fn shor_ec(code: &StabilizerCode, repetitions: usize) -> Result<Gadget> {
    if repetitions == 0 {
        return Err(Error::Domain(
            "Shor EC needs at least one repetition".into(),
        ));
    }
    let kit = CodeKit::new(code)?;
    one_block_gadget(&kit, "shor-ec".into(), GadgetRole::Ec, |kit, b, d| {
        let q = b.block_qubits(d).to_vec();
        kit.emit_shor_ec(b, &q, repetitions);
        Ok((d, vec![], vec![]))
    })
}

/// Steane EC for a CSS code.
pub fn steane_ec(code: &StabilizerCode) -> Result<Gadget> {
    let kit = CodeKit::new(code)?;
    kit.css()?;
    one_block_gadget(&kit, "steane-ec".into(), GadgetRole::Ec, |kit, b, d| {
        let q = b.block_qubits(d).to_vec();
        let rec = kit.emit_steane_ec(b, &q)?;
        Ok((d, vec![], rec))
    })
}

/// Steane EC whose corrections land one qubit off; a negative control for
/// the property checker.
pub fn broken_steane_ec(code: &StabilizerCode) -> Result<Gadget> {
    let kit = CodeKit::new(code)?;
    kit.css()?;
    one_block_gadget(
        &kit,
        "steane-ec-broken".into(),
        GadgetRole::Ec,
        |kit, b, d| {
            let q = b.block_qubits(d).to_vec();
            let rec = kit.emit_steane_ec_inner(b, &q, 1)?;
            Ok((d, vec![], rec))
        },
    )
}

/// Knill EC for a CSS code; the output is a different block.
pub fn knill_ec(code: &StabilizerCode) -> Result<Gadget> {
    let kit = CodeKit::new(code)?;
    kit.css()?;
    one_block_gadget(&kit, "knill-ec".into(), GadgetRole::Ec, |kit, b, d| {
        let q = b.block_qubits(d).to_vec();
        let out = kit.emit_knill_ec(b, &q)?;
        Ok((out, vec![], vec![]))
    })
}

/// Logical Z measurement through a `|0̄⟩` ancilla.
pub fn knill_measure(code: &StabilizerCode) -> Result<Gadget> {
    let kit = CodeKit::new(code)?;
    one_block_gadget(
        &kit,
        "knill-measure".into(),
        GadgetRole::Meas(Basis::Z),
        |kit, b, d| {
            let r = kit.emit_knill_measure(b, d)?;
            Ok((d, vec![r], vec![]))
        },
    )
}

/// Transversal logical measurement.
pub fn measure_logical(code: &StabilizerCode, basis: Basis) -> Result<Gadget> {
    let kit = CodeKit::new(code)?;
    let name = if basis == Basis::Z {
        "measure-z"
    } else {
        "measure-x"
    };
    one_block_gadget(&kit, name.into(), GadgetRole::Meas(basis), |kit, b, d| {
        let r = kit.emit_measure(b, d, basis)?;
        Ok((d, vec![r], vec![]))
    })
}

/// Preparation of `|0̄⟩` (Z basis) or `|+̄⟩` (X basis).
pub fn prep_logical(code: &StabilizerCode, basis: Basis, strategy: PrepStrategy) -> Result<Gadget> {
    let kit = CodeKit::new(code)?;
    let name = alloc::format!(
        "prep-{}-{}",
        if basis == Basis::Z { "0" } else { "plus" },
        match strategy {
            PrepStrategy::ShorProject => "shor",
            PrepStrategy::VerifyDiscard => "verify",
        }
    );
    let mut b = CircuitBuilder::new();
    let out = b.add_block("data", kit.n());
    b.begin_instance(InstanceKind::Prep, name.clone(), vec![out]);
    let q = b.block_qubits(out).to_vec();
    kit.emit_prep(&mut b, &q, basis, strategy)?;
    b.end_instance();
    Ok(Gadget {
        name,
        code: code.clone(),
        role: GadgetRole::Prep(basis),
        circuit: b.finish(),
        inputs: vec![],
        outputs: vec![out],
        readouts: vec![],
        ancillas: vec![],
    })
}

/// Projects an arbitrary input block onto `|0̄⟩` (Z basis) or `|+̄⟩`.
pub fn logical_projection(code: &StabilizerCode, basis: Basis) -> Result<Gadget> {
    let kit = CodeKit::new(code)?;
    let name = if basis == Basis::Z {
        "project-0"
    } else {
        "project-plus"
    };
    one_block_gadget(&kit, name.into(), GadgetRole::Prep(basis), |kit, b, d| {
        let q = b.block_qubits(d).to_vec();
        kit.emit_logical_projection(b, &q, basis)?;
        kit.emit_gauge(b, &q, basis);
        Ok((d, vec![], vec![]))
    })
}
