//! Dense code-space bases and the Knill-Laflamme conditions.

use alloc::vec;
use alloc::vec::Vec;

use super::StabilizerCode;
use crate::dense::{c, DenseState, C64};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Absolute tolerance for all dense code-space checks.
pub const KL_TOLERANCE: f64 = 1e-10;

/// Result of checking `⟨ψ_i|E_a† E_b|ψ_j⟩ = C_ab δ_ij`.
#[derive(Clone, Debug)]
pub struct KLReport {
    /// `C_ab = ⟨ψ_0|E_a† E_b|ψ_0⟩`, row-major.
    pub c_matrix: Vec<Vec<C64>>,
    pub is_code: bool,
    pub is_degenerate: bool,
    /// Largest deviation from the conditions found.
    pub max_violation: f64,
    pub rank: usize,
}

/// Orthonormal basis `|x̄⟩ = X̄^x |0̄⟩` of the code space, indexed by the
/// logical bit string `x` (logical qubit 0 most significant). `|0̄⟩` is the
/// joint `+1` eigenstate of the stabilizer and every `Z̄_i`.
pub fn codeword_basis(code: &StabilizerCode, limit: usize) -> Result<Vec<DenseState>> {
    let n = code.n();
    crate::dense::check_dense_limit(n, limit)?;
    let k = code.logical_x().len();
    let mut ops: Vec<PauliOperator> = code.generators().to_vec();
    ops.extend(code.logical_z().iter().cloned());
    let zero = stabilizer_state(&ops, n, limit)?;
    let mut basis = Vec::with_capacity(1 << k);
    for x in 0..1usize << k {
        let mut s = zero.clone();
        for i in 0..k {
            if x >> (k - 1 - i) & 1 == 1 {
                s.apply_pauli(&code.logical_x()[i])?;
            }
        }
        basis.push(s);
    }
    let expected = 1usize << (n - code.symplectic_matrix().rank());
    if basis.len() != expected {
        return Err(Error::Construction(alloc::format!(
            "code space dimension {} differs from 2^(n-a) = {expected}",
            basis.len()
        )));
    }
    Ok(basis)
}

/// The joint `+1` eigenstate of a complete commuting set of Hermitian
/// Paulis (signs included): the projection of the first computational basis
/// state with nonzero overlap, normalized, with global phase fixed so the
/// first significant amplitude is real and positive.
pub fn stabilizer_state(ops: &[PauliOperator], n: usize, limit: usize) -> Result<DenseState> {
    crate::dense::check_dense_limit(n, limit)?;
    let unsigned: Vec<(PauliOperator, bool)> = ops
        .iter()
        .map(|g| (g.clone().with_phase(0), g.sign_bit()))
        .collect();
    for index in 0..1usize << n {
        let mut s = DenseState::basis(n, index, limit)?;
        for (g, negative) in &unsigned {
            s.project_pauli(g, *negative)?;
        }
        if s.norm_sqr() > 1e-12 {
            s.normalize();
            s.fix_global_phase();
            return Ok(s);
        }
    }
    Err(Error::Construction(
        "the operators have no common +1 eigenstate".into(),
    ))
}

fn rank(m: &[Vec<C64>], tol: f64) -> usize {
    let mut a: Vec<Vec<C64>> = m.to_vec();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
        else {
            break;
        };
        if a[p][col].norm() <= tol {
            continue;
        }
        a.swap(r, p);
        let pivot = a[r][col];
        for i in 0..rows {
            if i != r {
                let f = a[i][col] / pivot;
                if f.norm() > 0.0 {
                    for j in col..cols {
                        let v = a[r][j];
                        a[i][j] -= f * v;
                    }
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Checks the Knill-Laflamme conditions for `errors` on the code space.
pub fn verify_knill_laflamme(
    code: &StabilizerCode,
    errors: &[PauliOperator],
    limit: usize,
) -> Result<KLReport> {
    let basis = codeword_basis(code, limit)?;
    let m = errors.len();
    let images: Vec<Vec<DenseState>> = basis
        .iter()
        .map(|psi| {
            errors
                .iter()
                .map(|e| {
                    let mut s = psi.clone();
                    s.apply_pauli(e).map(|_| s)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let entry = |i: usize, j: usize, a: usize, b: usize| images[i][a].inner(&images[j][b]);
    let mut c_matrix = vec![vec![c(0.0, 0.0); m]; m];
    for a in 0..m {
        for b in 0..m {
            c_matrix[a][b] = entry(0, 0, a, b);
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            for a in 0..m {
                for b in 0..m {
                    let v = entry(i, j, a, b);
                    let target = if i == j { c_matrix[a][b] } else { c(0.0, 0.0) };
                    worst = worst.max((v - target).norm());
                }
            }
        }
    }
    let r = rank(&c_matrix, KL_TOLERANCE);
    Ok(KLReport {
        is_code: worst <= KL_TOLERANCE,
        is_degenerate: r < m,
        max_violation: worst,
        rank: r,
        c_matrix,
    })
}
