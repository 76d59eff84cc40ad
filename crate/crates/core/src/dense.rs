//! State-vector simulation for small registers.
//!
//! Basis index bit `n-1-q` holds qubit `q`, so an index written in binary
//! reads in the same left-to-right order as a Pauli label.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{check_len, Error, Result};
use crate::pauli::PauliOperator;

/// Default qubit cap for dense routines.
pub const DEFAULT_DENSE_LIMIT: usize = 16;

pub type C64 = Complex64;

/// A 2×2 matrix in row-major order.
pub type Matrix2 = [[C64; 2]; 2];

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{iθ}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    c(libm::cos(theta), libm::sin(theta))
}

pub mod gates {
    //! Single-qubit matrices used by the dense engine.
    use super::{c, cis, Matrix2};

    const S: f64 = core::f64::consts::FRAC_1_SQRT_2;

    pub fn identity() -> Matrix2 {
        [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
    }
    pub fn h() -> Matrix2 {
        [[c(S, 0.0), c(S, 0.0)], [c(S, 0.0), c(-S, 0.0)]]
    }
    /// Phase gate `diag(1, i)`.
    pub fn p() -> Matrix2 {
        [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]]
    }
    pub fn pdg() -> Matrix2 {
        [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]]
    }
    /// The π/8 rotation `diag(1, e^{iπ/4})`.
    pub fn t() -> Matrix2 {
        [
            [c(1.0, 0.0), c(0.0, 0.0)],
            [c(0.0, 0.0), cis(core::f64::consts::FRAC_PI_4)],
        ]
    }
    pub fn x() -> Matrix2 {
        [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]
    }
    pub fn y() -> Matrix2 {
        [[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]
    }
    pub fn z() -> Matrix2 {
        [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]
    }
    /// `exp(-iθZ/2) = cos(θ/2) I - i sin(θ/2) Z`.
    pub fn rz(theta: f64) -> Matrix2 {
        [
            [cis(-theta / 2.0), c(0.0, 0.0)],
            [c(0.0, 0.0), cis(theta / 2.0)],
        ]
    }
    /// `exp(-iθX/2)`.
    pub fn rx(theta: f64) -> Matrix2 {
        let (cs, sn) = (libm::cos(theta / 2.0), libm::sin(theta / 2.0));
        [[c(cs, 0.0), c(0.0, -sn)], [c(0.0, -sn), c(cs, 0.0)]]
    }

    pub fn mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
        let mut out = [[c(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }

    pub fn adjoint(a: &Matrix2) -> Matrix2 {
        [
            [a[0][0].conj(), a[1][0].conj()],
            [a[0][1].conj(), a[1][1].conj()],
        ]
    }

    pub fn scale(a: &Matrix2, s: super::C64) -> Matrix2 {
        [[a[0][0] * s, a[0][1] * s], [a[1][0] * s, a[1][1] * s]]
    }

    /// Largest entrywise distance.
    pub fn distance(a: &Matrix2, b: &Matrix2) -> f64 {
        let mut d: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                d = d.max((a[i][j] - b[i][j]).norm());
            }
        }
        d
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<C64>,
}

pub fn check_dense_limit(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::ResourceLimit {
            what: "dense simulation qubits",
            size: n,
            limit,
        })
    } else {
        Ok(())
    }
}

impl DenseState {
    /// `|0…0⟩` on `n` qubits, refusing registers above `limit`.
    pub fn zero(n: usize, limit: usize) -> Result<Self> {
        check_dense_limit(n, limit)?;
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[0] = c(1.0, 0.0);
        Ok(DenseState { n, amps })
    }

    pub fn basis(n: usize, index: usize, limit: usize) -> Result<Self> {
        let mut s = DenseState::zero(n, limit)?;
        s.amps[0] = c(0.0, 0.0);
        s.amps[index] = c(1.0, 0.0);
        Ok(s)
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let n = amps.len().trailing_zeros() as usize;
        if amps.len() != 1 << n {
            return Err(Error::Domain(
                "amplitude count is not a power of two".into(),
            ));
        }
        Ok(DenseState { n, amps })
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    #[inline]
    fn mask(&self, q: usize) -> usize {
        1 << (self.n - 1 - q)
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            Err(Error::IndexOutOfRange {
                index: q,
                len: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn normalize(&mut self) -> f64 {
        let norm = libm::sqrt(self.norm_sqr());
        if norm > 0.0 {
            for a in self.amps.iter_mut() {
                *a /= norm;
            }
        }
        norm
    }

    pub fn scale(&mut self, s: C64) {
        for a in self.amps.iter_mut() {
            *a *= s;
        }
    }

    pub fn add_scaled(&mut self, other: &DenseState, s: C64) {
        for (a, b) in self.amps.iter_mut().zip(&other.amps) {
            *a += *b * s;
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &DenseState) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²` for normalized states; insensitive to global phase.
    pub fn fidelity(&self, other: &DenseState) -> f64 {
        self.inner(other).norm_sqr()
    }

    /// Multiplies by a phase making the first significant amplitude real
    /// and positive.
    pub fn fix_global_phase(&mut self) {
        let max = self.amps.iter().map(|a| a.norm()).fold(0.0, f64::max);
        if let Some(a) = self.amps.iter().find(|a| a.norm() > max * 1e-6) {
            let ph = a.conj() / a.norm();
            self.scale(ph);
        }
    }

    pub fn apply_1q(&mut self, q: usize, m: &Matrix2) -> Result<()> {
        self.check_qubit(q)?;
        let bit = self.mask(q);
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    /// Applies `m` to `target` on the branch where `control` is 1.
    pub fn apply_controlled(&mut self, control: usize, target: usize, m: &Matrix2) -> Result<()> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::Domain("control equals target".into()));
        }
        let (cb, tb) = (self.mask(control), self.mask(target));
        for i in 0..self.amps.len() {
            if i & cb != 0 && i & tb == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | tb]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | tb] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        Ok(())
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> Result<()> {
        self.apply_controlled(control, target, &gates::x())
    }

    /// `P|ψ⟩` including the operator's phase.
    pub fn apply_pauli(&mut self, p: &PauliOperator) -> Result<()> {
        check_len(self.n, p.num_qubits())?;
        let out = self.pauli_image(p);
        self.amps = out;
        Ok(())
    }

    fn masks(&self, p: &PauliOperator) -> (usize, usize, u8) {
        let mut xm = 0usize;
        let mut zm = 0usize;
        let mut ys = 0u8;
        for q in 0..self.n {
            let (x, z) = p.get(q).bits();
            if x {
                xm |= self.mask(q);
            }
            if z {
                zm |= self.mask(q);
            }
            if x && z {
                ys += 1;
            }
        }
        (xm, zm, ys)
    }

    fn pauli_image(&self, p: &PauliOperator) -> Vec<C64> {
        // σ(x,z) = i^{x·z} X^x Z^z per qubit
        let (xm, zm, ys) = self.masks(p);
        let base = i_pow(p.phase() as u32 + ys as u32);
        let mut out = vec![c(0.0, 0.0); self.amps.len()];
        for (b, &a) in self.amps.iter().enumerate() {
            let sign = if (b & zm).count_ones() % 2 == 1 {
                -1.0
            } else {
                1.0
            };
            out[b ^ xm] = a * base * sign;
        }
        out
    }

    /// `⟨ψ|P|ψ⟩`.
    pub fn expectation(&self, p: &PauliOperator) -> Result<C64> {
        check_len(self.n, p.num_qubits())?;
        let img = self.pauli_image(p);
        Ok(self.amps.iter().zip(&img).map(|(a, b)| a.conj() * b).sum())
    }

    /// Applies `(I + s·P)/2` for `s = ±1` without renormalizing; returns the
    /// squared norm of the result relative to the input.
    pub fn project_pauli(&mut self, p: &PauliOperator, negative: bool) -> Result<f64> {
        check_len(self.n, p.num_qubits())?;
        let before = self.norm_sqr();
        let img = self.pauli_image(p);
        let s = if negative { -0.5 } else { 0.5 };
        for (a, b) in self.amps.iter_mut().zip(&img) {
            *a = *a * 0.5 + *b * s;
        }
        Ok(if before > 0.0 {
            self.norm_sqr() / before
        } else {
            0.0
        })
    }

    /// Born-rule measurement of a Hermitian Pauli; returns `true` for the
    /// `-1` outcome and leaves the normalized post-measurement state.
    pub fn measure_pauli<R: Rng + ?Sized>(
        &mut self,
        p: &PauliOperator,
        rng: &mut R,
    ) -> Result<bool> {
        if !p.is_hermitian() {
            return Err(Error::Domain(alloc::format!("{p} is not Hermitian")));
        }
        let ev = self.expectation(p)?.re;
        let p_minus = ((1.0 - ev) / 2.0).clamp(0.0, 1.0);
        let outcome = rng.random::<f64>() < p_minus;
        self.project_pauli(p, outcome)?;
        self.normalize();
        Ok(outcome)
    }

    /// Probability of the `-1` outcome when measuring `p`.
    pub fn probability_minus(&self, p: &PauliOperator) -> Result<f64> {
        let ev = self.expectation(p)?.re;
        Ok(((1.0 - ev) / 2.0).clamp(0.0, 1.0))
    }

    /// Tensor product `self ⊗ other`, with `self` on the leading qubits.
    pub fn tensor(&self, other: &DenseState, limit: usize) -> Result<DenseState> {
        check_dense_limit(self.n + other.n, limit)?;
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ok(DenseState {
            n: self.n + other.n,
            amps,
        })
    }

    /// Largest amplitude difference after aligning global phases.
    pub fn distance_up_to_phase(&self, other: &DenseState) -> f64 {
        let ov = self.inner(other);
        let ph = if ov.norm() > 0.0 {
            ov.conj() / ov.norm()
        } else {
            c(1.0, 0.0)
        };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (*a - *b * ph).norm())
            .fold(0.0, f64::max)
    }
}

#[inline]
pub fn i_pow(e: u32) -> C64 {
    match e % 4 {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    }
}

/// Full matrix of a Pauli, for oracle tests on a few qubits.
pub fn pauli_matrix(p: &PauliOperator) -> Vec<Vec<C64>> {
    let n = p.num_qubits();
    let dim = 1 << n;
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for col in 0..dim {
        let mut s = DenseState {
            n,
            amps: vec![c(0.0, 0.0); dim],
        };
        s.amps[col] = c(1.0, 0.0);
        let img = s.pauli_image(p);
        for (row, v) in img.into_iter().enumerate() {
            m[row][col] = v;
        }
    }
    m
}
