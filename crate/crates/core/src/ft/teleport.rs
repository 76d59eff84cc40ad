//! Dense-state check of the encoded `π/8` gate by teleportation through a
//! magic ancilla on the seven-qubit code.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::codes::{codeword_basis, BundledCode};
use crate::dense::{c, cis, gates, DenseState};
use crate::error::Result;

/// One (input, measurement outcome) branch of the protocol.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TeleportBranch {
    pub input: String,
    /// `true` when the data block was found in `|1̄⟩`.
    pub outcome: bool,
    pub probability: f64,
    /// Overlap with `T̄|ψ̄⟩ ⊗ |outcome̅⟩` after the correction.
    pub fidelity: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TeleportReport {
    pub branches: Vec<TeleportBranch>,
}

impl TeleportReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.branches
            .iter()
            .all(|b| (b.fidelity - 1.0).abs() <= tol && (b.probability - 0.5).abs() <= tol)
    }
}

/// `a|0̄⟩ + b|1̄⟩`.
fn logical_state(basis: &[DenseState], a: crate::dense::C64, b: crate::dense::C64) -> DenseState {
    let mut s = basis[0].clone();
    s.scale(a);
    s.add_scaled(&basis[1], b);
    s.normalize();
    s
}

/// Prepares `(|0̄⟩ + e^{iπ/4}|1̄⟩)/√2` on the leading block, the input on the
/// trailing block, applies a transversal CNOT from the ancilla into the
/// input, measures the input block's logical Z, and on outcome one applies
/// `X̄P̄†` to the ancilla, where `P̄†` is `P` on every qubit.
pub fn pi8_teleport_check(limit: usize) -> Result<TeleportReport> {
    let code = BundledCode::SevenQubit.code();
    let n = code.n();
    let basis = codeword_basis(&code, limit)?;
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let magic = logical_state(&basis, c(s, 0.0), cis(core::f64::consts::FRAC_PI_4) * s);
    let inputs: [(&'static str, _, _); 4] = [
        ("zero", c(1.0, 0.0), c(0.0, 0.0)),
        ("one", c(0.0, 0.0), c(1.0, 0.0)),
        ("plus", c(s, 0.0), c(s, 0.0)),
        ("generic", c(libm::cos(0.3), 0.0), cis(0.7) * libm::sin(0.3)),
    ];
    let anc: Vec<usize> = (0..n).collect();
    let data: Vec<usize> = (n..2 * n).collect();
    let zbar = code.logical_z()[0].embed(2 * n, &data)?;
    let xbar = code.logical_x()[0].embed(2 * n, &anc)?;
    let mut branches = Vec::new();
    for (name, a, b) in inputs {
        let psi = logical_state(&basis, a, b);
        let mut joint = magic.tensor(&psi, limit)?;
        for i in 0..n {
            joint.cnot(anc[i], data[i])?;
        }
        let omega = cis(core::f64::consts::FRAC_PI_4);
        let rotated = logical_state(&basis, a, b * omega);
        for outcome in [false, true] {
            let mut st = joint.clone();
            let probability = st.project_pauli(&zbar, outcome)?;
            st.normalize();
            if outcome {
                for &q in &anc {
                    st.apply_1q(q, &gates::p())?;
                }
                st.apply_pauli(&xbar)?;
            }
            let target = rotated.tensor(&basis[outcome as usize], limit)?;
            branches.push(TeleportBranch {
                input: name.into(),
                outcome,
                probability,
                fidelity: st.fidelity(&target),
            });
        }
    }
    Ok(TeleportReport { branches })
}
