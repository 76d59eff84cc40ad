use alloc::vec::Vec;

use super::{conjugate_unchecked, CliffordGate};
use crate::bits::{BitMatrix, BitVec};
use crate::error::Result;
use crate::pauli::{PauliKind, PauliOperator};

/// `Ω = [[0, I], [I, 0]]` on `(x|z)` coordinates.
pub fn symplectic_form(n: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, true);
        m.set(n + i, i, true);
    }
    m
}

/// `M Ω Mᵀ = Ω` over GF(2).
pub fn is_symplectic(m: &BitMatrix) -> bool {
    let size = m.num_rows();
    if size % 2 != 0 || m.num_cols() != size {
        return false;
    }
    let omega = symplectic_form(size / 2);
    let lhs = m
        .mul(&omega)
        .and_then(|mo| mo.mul(&m.transpose()))
        .expect("square shapes");
    lhs == omega
}

/// Binary matrix of a gate sequence acting on row vectors `(x|z)`: row `i`
/// is the image of `X_i`, row `n + i` the image of `Z_i`, so a Pauli with
/// vector `v` maps to `v M`. Gates compose left to right, `M = M₁ M₂ ⋯`.
pub fn symplectic_of(gates: &[CliffordGate], n: usize) -> Result<BitMatrix> {
    for g in gates {
        g.check(n)?;
    }
    let rows: Vec<BitVec> = (0..2 * n)
        .map(|r| {
            let kind = if r < n { PauliKind::X } else { PauliKind::Z };
            let mut p = PauliOperator::single(n, r % n, kind).expect("index in range");
            for g in gates {
                conjugate_unchecked(&mut p, g);
            }
            p.to_symplectic()
        })
        .collect();
    BitMatrix::from_rows(2 * n, rows)
}

/// Matrix of a single gate.
pub fn gate_symplectic(gate: &CliffordGate, n: usize) -> Result<BitMatrix> {
    symplectic_of(core::slice::from_ref(gate), n)
}
