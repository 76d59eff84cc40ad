//! The field with four elements and its correspondence with Paulis.
//!
//! An element is stored as two bits `(x, z)` meaning `x·ω + z`, so that
//! `I ↦ 0`, `Z ↦ 1`, `X ↦ ω`, `Y ↦ ω²` and addition is XOR.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use crate::bits::BitVec;
use crate::error::{check_len, Result};
use crate::pauli::{PauliKind, PauliOperator};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf4(u8);

impl Gf4 {
    pub const ZERO: Gf4 = Gf4(0);
    pub const ONE: Gf4 = Gf4(1);
    pub const OMEGA: Gf4 = Gf4(2);
    pub const OMEGA2: Gf4 = Gf4(3);
    pub const ALL: [Gf4; 4] = [Gf4::ZERO, Gf4::ONE, Gf4::OMEGA, Gf4::OMEGA2];

    pub fn from_bits(x: bool, z: bool) -> Self {
        Gf4(((x as u8) << 1) | z as u8)
    }

    /// `(coefficient of ω, constant term)`.
    pub fn bits(self) -> (bool, bool) {
        (self.0 & 2 != 0, self.0 & 1 != 0)
    }

    /// Conjugation `a ↦ a²`, which swaps ω and ω².
    pub fn conj(self) -> Self {
        self * self
    }

    /// Trace `a + a²`, always 0 or 1.
    pub fn trace(self) -> bool {
        let t = self + self.conj();
        debug_assert!(t == Gf4::ZERO || t == Gf4::ONE);
        t == Gf4::ONE
    }

    pub fn pow(self, e: u32) -> Self {
        (0..e).fold(Gf4::ONE, |acc, _| acc * self)
    }
}

impl Add for Gf4 {
    type Output = Gf4;
    fn add(self, rhs: Gf4) -> Gf4 {
        Gf4(self.0 ^ rhs.0)
    }
}

impl Mul for Gf4 {
    type Output = Gf4;
    fn mul(self, rhs: Gf4) -> Gf4 {
        if self.0 == 0 || rhs.0 == 0 {
            return Gf4::ZERO;
        }
        // nonzero elements are ω^0, ω^1, ω^2 with log table 1→0, 2→1, 3→2
        let log = |a: u8| (a - 1) as u32;
        let e = (log(self.0) + log(rhs.0)) % 3;
        Gf4(e as u8 + 1)
    }
}

impl fmt::Debug for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "ω",
            _ => "ω²",
        })
    }
}

impl fmt::Display for Gf4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Gf4Vector {
    pub entries: Vec<Gf4>,
}

impl Gf4Vector {
    pub fn zeros(n: usize) -> Self {
        Gf4Vector {
            entries: alloc::vec![Gf4::ZERO; n],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &Gf4Vector) -> Result<Gf4Vector> {
        check_len(self.len(), other.len())?;
        Ok(Gf4Vector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: Gf4) -> Gf4Vector {
        Gf4Vector {
            entries: self.entries.iter().map(|&a| a * c).collect(),
        }
    }
}

/// Maps a Pauli (phase dropped) to its GF(4) vector.
pub fn gf4_encode(p: &PauliOperator) -> Gf4Vector {
    Gf4Vector {
        entries: (0..p.num_qubits())
            .map(|q| {
                let (x, z) = p.get(q).bits();
                Gf4::from_bits(x, z)
            })
            .collect(),
    }
}

/// Inverse of [`gf4_encode`]; the result has phase 0.
pub fn gf4_decode(v: &Gf4Vector) -> PauliOperator {
    let mut x = BitVec::zeros(v.len());
    let mut z = BitVec::zeros(v.len());
    for (q, e) in v.entries.iter().enumerate() {
        let (bx, bz) = e.bits();
        x.set(q, bx);
        z.set(q, bz);
    }
    PauliOperator::from_bits(x, z, 0).expect("equal lengths")
}

/// `Σ_i tr(u_i · conj(v_i)) mod 2`; zero exactly when the corresponding
/// Paulis commute.
pub fn trace_inner(u: &Gf4Vector, v: &Gf4Vector) -> Result<bool> {
    check_len(u.len(), v.len())?;
    Ok(u.entries
        .iter()
        .zip(&v.entries)
        .fold(false, |acc, (&a, &b)| acc ^ (a * b.conj()).trace()))
}

impl From<PauliKind> for Gf4 {
    fn from(k: PauliKind) -> Gf4 {
        let (x, z) = k.bits();
        Gf4::from_bits(x, z)
    }
}
