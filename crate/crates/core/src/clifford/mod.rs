//! Clifford gates, their action on Paulis, stabilizer tableaux and a dense
//! cross-check harness.

mod circuit;
mod compare;
mod symplectic;
mod tableau;

pub use circuit::{random_clifford_circuit, Instruction, PrepState, SimCircuit};
pub use compare::{apply_dense_gate, clifford_vs_dense_check, dense_run, CrossCheckReport};
pub use symplectic::{gate_symplectic, is_symplectic, symplectic_form, symplectic_of};
pub use tableau::{MeasurementOutcome, Tableau};

use core::fmt;

use crate::error::{check_len, Error, Result};
use crate::pauli::PauliOperator;

/// A Clifford gate on named qubits. `P` is `diag(1, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliffordGate {
    H(usize),
    P(usize),
    Pdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
    Cy(usize, usize),
    /// A full-register Pauli.
    Pauli(PauliOperator),
}

impl CliffordGate {
    pub fn qubits(&self) -> alloc::vec::Vec<usize> {
        use CliffordGate::*;
        match self {
            H(q) | P(q) | Pdg(q) | X(q) | Y(q) | Z(q) => alloc::vec![*q],
            Cnot(a, b) | Cz(a, b) | Cy(a, b) => alloc::vec![*a, *b],
            Pauli(p) => p.support().iter_ones().collect(),
        }
    }

    /// Checks indices against a register of `n` qubits.
    pub fn check(&self, n: usize) -> Result<()> {
        use CliffordGate::*;
        match self {
            H(q) | P(q) | Pdg(q) | X(q) | Y(q) | Z(q) => check_index(*q, n),
            Cnot(a, b) | Cz(a, b) | Cy(a, b) => {
                check_index(*a, n)?;
                check_index(*b, n)?;
                if a == b {
                    return Err(Error::Domain(alloc::format!(
                        "two-qubit gate on a single qubit {a}"
                    )));
                }
                Ok(())
            }
            Pauli(p) => check_len(n, p.num_qubits()),
        }
    }

    /// The inverse gate.
    pub fn inverse(&self) -> CliffordGate {
        match self {
            CliffordGate::P(q) => CliffordGate::Pdg(*q),
            CliffordGate::Pdg(q) => CliffordGate::P(*q),
            other => other.clone(),
        }
    }
}

fn check_index(q: usize, n: usize) -> Result<()> {
    if q >= n {
        Err(Error::IndexOutOfRange { index: q, len: n })
    } else {
        Ok(())
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CliffordGate::*;
        match self {
            H(q) => write!(f, "H {q}"),
            P(q) => write!(f, "P {q}"),
            Pdg(q) => write!(f, "PDG {q}"),
            X(q) => write!(f, "X {q}"),
            Y(q) => write!(f, "Y {q}"),
            Z(q) => write!(f, "Z {q}"),
            Cnot(a, b) => write!(f, "CNOT {a} {b}"),
            Cz(a, b) => write!(f, "CZ {a} {b}"),
            Cy(a, b) => write!(f, "CY {a} {b}"),
            Pauli(p) => write!(f, "PAULI {p}"),
        }
    }
}

/// Replaces `p` by `U p U†` for the gate `U`, tracking the phase exactly.
/// Indices are assumed valid.
pub fn conjugate_unchecked(p: &mut PauliOperator, gate: &CliffordGate) {
    use CliffordGate::*;
    let negate = |ph: &mut u8| *ph = (*ph + 2) & 3;
    match gate {
        H(q) => {
            let (x, z, ph) = p.parts_mut();
            let (xb, zb) = (x.get(*q), z.get(*q));
            if xb && zb {
                negate(ph);
            }
            x.set(*q, zb);
            z.set(*q, xb);
        }
        P(q) | Pdg(q) => {
            let (x, z, ph) = p.parts_mut();
            let (xb, zb) = (x.get(*q), z.get(*q));
            if xb {
                // P: X → Y, Y → -X.  P†: X → -Y, Y → X.
                if zb == matches!(gate, P(_)) {
                    negate(ph);
                }
                z.set(*q, !zb);
            }
        }
        X(q) => {
            let (_, z, ph) = p.parts_mut();
            if z.get(*q) {
                negate(ph);
            }
        }
        Z(q) => {
            let (x, _, ph) = p.parts_mut();
            if x.get(*q) {
                negate(ph);
            }
        }
        Y(q) => {
            let (x, z, ph) = p.parts_mut();
            if x.get(*q) != z.get(*q) {
                negate(ph);
            }
        }
        Cnot(c, t) => {
            let (x, z, ph) = p.parts_mut();
            let (xc, zc, xt, zt) = (x.get(*c), z.get(*c), x.get(*t), z.get(*t));
            if xc && zt && (xt == zc) {
                negate(ph);
            }
            x.set(*t, xt ^ xc);
            z.set(*c, zc ^ zt);
        }
        Cz(a, b) => {
            conjugate_unchecked(p, &H(*b));
            conjugate_unchecked(p, &Cnot(*a, *b));
            conjugate_unchecked(p, &H(*b));
        }
        Cy(c, t) => {
            // CY = P_t · CNOT · P_t†
            conjugate_unchecked(p, &Pdg(*t));
            conjugate_unchecked(p, &Cnot(*c, *t));
            conjugate_unchecked(p, &P(*t));
        }
        Pauli(q) => {
            if p.anticommutes_unchecked(q) {
                let (_, _, ph) = p.parts_mut();
                negate(ph);
            }
        }
    }
}

/// `U p U†`, validating the gate against `p`'s length.
pub fn conjugate(p: &PauliOperator, gate: &CliffordGate) -> Result<PauliOperator> {
    gate.check(p.num_qubits())?;
    let mut out = p.clone();
    conjugate_unchecked(&mut out, gate);
    Ok(out)
}

/// Conjugates `p` through the gates in order (the first gate acts first).
pub fn conjugate_through(p: &PauliOperator, gates: &[CliffordGate]) -> Result<PauliOperator> {
    let mut out = p.clone();
    for g in gates {
        g.check(p.num_qubits())?;
        conjugate_unchecked(&mut out, g);
    }
    Ok(out)
}
