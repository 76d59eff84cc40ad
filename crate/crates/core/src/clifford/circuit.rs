use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use rand::Rng;

use super::{CliffordGate, MeasurementOutcome, Tableau};
use crate::error::{check_len, Error, Result};
use crate::pauli::{PauliKind, PauliOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrepState {
    Zero,
    Plus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction {
    Gate(CliffordGate),
    /// `diag(1, e^{iπ/4})`, dense engine only.
    T(usize),
    Measure(PauliOperator),
    Prep(usize, PrepState),
    Wait(usize),
}

/// A straight-line circuit for the simulators, with text form
///
/// ```text
/// QUBITS 2
/// H 0
/// CNOT 0 1
/// MEAS +ZZ
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimCircuit {
    pub n: usize,
    pub instructions: Vec<Instruction>,
}

impl SimCircuit {
    pub fn new(n: usize) -> Self {
        SimCircuit {
            n,
            instructions: Vec::new(),
        }
    }

    pub fn push(&mut self, instruction: Instruction) -> Result<()> {
        match &instruction {
            Instruction::Gate(g) => g.check(self.n)?,
            Instruction::T(q) | Instruction::Prep(q, _) | Instruction::Wait(q) => {
                if *q >= self.n {
                    return Err(Error::IndexOutOfRange {
                        index: *q,
                        len: self.n,
                    });
                }
            }
            Instruction::Measure(p) => {
                check_len(self.n, p.num_qubits())?;
                if !p.is_hermitian() {
                    return Err(Error::Domain(alloc::format!("{p} is not Hermitian")));
                }
            }
        }
        self.instructions.push(instruction);
        Ok(())
    }

    pub fn gate(&mut self, g: CliffordGate) -> Result<()> {
        self.push(Instruction::Gate(g))
    }

    pub fn is_clifford(&self) -> bool {
        !self
            .instructions
            .iter()
            .any(|i| matches!(i, Instruction::T(_)))
    }

    pub fn num_measurements(&self) -> usize {
        self.instructions
            .iter()
            .filter(|i| matches!(i, Instruction::Measure(_)))
            .count()
    }

    /// Runs on a tableau from `|0…0⟩`, returning each `MEAS` outcome.
    pub fn run_tableau<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
    ) -> Result<(Tableau, Vec<MeasurementOutcome>)> {
        let mut t = Tableau::new(self.n);
        let mut out = Vec::with_capacity(self.num_measurements());
        for ins in &self.instructions {
            match ins {
                Instruction::Gate(g) => t.apply_gate(g)?,
                Instruction::T(_) => {
                    return Err(Error::Unsupported("T gate needs the dense engine".into()))
                }
                Instruction::Measure(p) => out.push(t.measure_pauli(p, rng)?),
                Instruction::Prep(q, s) => {
                    t.reset(*q, *s == PrepState::Plus, rng)?;
                }
                Instruction::Wait(_) => {}
            }
        }
        debug_assert!(self.n > 16 || t.is_consistent());
        Ok((t, out))
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut parsed: Vec<(usize, Instruction)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err =
                |msg: &str| Error::Parse(alloc::format!("line {}: {msg}: {line}", lineno + 1));
            let mut parts = line.split_whitespace();
            let op = parts.next().unwrap_or("").to_ascii_uppercase();
            let args: Vec<&str> = parts.collect();
            let idx = |i: usize| -> Result<usize> {
                args.get(i)
                    .ok_or_else(|| err("missing qubit index"))?
                    .parse::<usize>()
                    .map_err(|_| err("bad qubit index"))
            };
            let arity = |k: usize| -> Result<()> {
                if args.len() != k {
                    Err(err("wrong number of arguments"))
                } else {
                    Ok(())
                }
            };
            let ins = match op.as_str() {
                "QUBITS" => {
                    arity(1)?;
                    declared = Some(idx(0)?);
                    continue;
                }
                "H" | "P" | "PDG" | "X" | "Y" | "Z" | "T" | "WAIT" => {
                    arity(1)?;
                    let q = idx(0)?;
                    match op.as_str() {
                        "H" => Instruction::Gate(CliffordGate::H(q)),
                        "P" => Instruction::Gate(CliffordGate::P(q)),
                        "PDG" => Instruction::Gate(CliffordGate::Pdg(q)),
                        "X" => Instruction::Gate(CliffordGate::X(q)),
                        "Y" => Instruction::Gate(CliffordGate::Y(q)),
                        "Z" => Instruction::Gate(CliffordGate::Z(q)),
                        "T" => Instruction::T(q),
                        _ => Instruction::Wait(q),
                    }
                }
                "CNOT" | "CZ" | "CY" => {
                    arity(2)?;
                    let (a, b) = (idx(0)?, idx(1)?);
                    Instruction::Gate(match op.as_str() {
                        "CNOT" => CliffordGate::Cnot(a, b),
                        "CZ" => CliffordGate::Cz(a, b),
                        _ => CliffordGate::Cy(a, b),
                    })
                }
                "MEAS" | "PAULI" => {
                    arity(1)?;
                    let p: PauliOperator = args[0].parse().map_err(|_| err("bad Pauli string"))?;
                    if op == "MEAS" {
                        Instruction::Measure(p)
                    } else {
                        Instruction::Gate(CliffordGate::Pauli(p))
                    }
                }
                "PREP" => {
                    arity(2)?;
                    let state = match args[1] {
                        "0" => PrepState::Zero,
                        "+" => PrepState::Plus,
                        _ => return Err(err("preparation state must be 0 or +")),
                    };
                    Instruction::Prep(idx(0)?, state)
                }
                _ => return Err(err("unknown instruction")),
            };
            parsed.push((lineno + 1, ins));
        }
        let n = match declared {
            Some(n) => n,
            None => parsed.iter().map(|(_, i)| min_width(i)).max().unwrap_or(0),
        };
        let mut c = SimCircuit::new(n);
        for (lineno, ins) in parsed {
            c.push(ins)
                .map_err(|e| Error::Parse(alloc::format!("line {lineno}: {e}")))?;
        }
        Ok(c)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "QUBITS {}", self.n);
        for ins in &self.instructions {
            let _ = match ins {
                Instruction::Gate(g) => writeln!(s, "{g}"),
                Instruction::T(q) => writeln!(s, "T {q}"),
                Instruction::Measure(p) => writeln!(s, "MEAS {p}"),
                Instruction::Prep(q, PrepState::Zero) => writeln!(s, "PREP {q} 0"),
                Instruction::Prep(q, PrepState::Plus) => writeln!(s, "PREP {q} +"),
                Instruction::Wait(q) => writeln!(s, "WAIT {q}"),
            };
        }
        s
    }
}

fn min_width(ins: &Instruction) -> usize {
    match ins {
        Instruction::Gate(CliffordGate::Pauli(p)) | Instruction::Measure(p) => p.num_qubits(),
        Instruction::Gate(g) => g.qubits().into_iter().max().map_or(0, |q| q + 1),
        Instruction::T(q) | Instruction::Prep(q, _) | Instruction::Wait(q) => q + 1,
    }
}

/// Random circuit of `gates` Clifford gates on `n ≥ 2` qubits with
/// `measurements` random signed Pauli measurements at random positions.
pub fn random_clifford_circuit<R: Rng + ?Sized>(
    n: usize,
    gates: usize,
    measurements: usize,
    rng: &mut R,
) -> SimCircuit {
    assert!(n >= 2, "random circuits need two qubits");
    let mut c = SimCircuit::new(n);
    let mut slots: Vec<usize> = (0..measurements)
        .map(|_| rng.random_range(0..=gates))
        .collect();
    slots.sort_unstable();
    let mut next = 0;
    for step in 0..=gates {
        while next < slots.len() && slots[next] == step {
            c.push(Instruction::Measure(random_hermitian(n, rng)))
                .expect("valid");
            next += 1;
        }
        if step == gates {
            break;
        }
        let q = rng.random_range(0..n);
        let mut r = rng.random_range(0..n - 1);
        if r >= q {
            r += 1;
        }
        let g = match rng.random_range(0..9) {
            0 => CliffordGate::H(q),
            1 => CliffordGate::P(q),
            2 => CliffordGate::Pdg(q),
            3 => CliffordGate::X(q),
            4 => CliffordGate::Y(q),
            5 => CliffordGate::Z(q),
            6 => CliffordGate::Cnot(q, r),
            7 => CliffordGate::Cz(q, r),
            _ => CliffordGate::Cy(q, r),
        };
        c.gate(g).expect("valid");
    }
    c
}

fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PauliOperator {
    loop {
        let kinds: Vec<PauliKind> = (0..n)
            .map(|_| PauliKind::ALL[rng.random_range(0..4)])
            .collect();
        let p = PauliOperator::from_kinds(&kinds);
        if !p.is_identity() {
            return if rng.random::<bool>() { p.negated() } else { p };
        }
    }
}
