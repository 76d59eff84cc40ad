//! n-qubit Pauli operators in the binary symplectic representation.
//!
//! An operator is stored as `i^phase · σ_0 ⊗ σ_1 ⊗ … ⊗ σ_{n-1}` where each
//! `σ_q` is one of the matrices I, X, Y, Z selected by the bit pair
//! `(x_q, z_q)`: `(0,0)=I`, `(1,0)=X`, `(1,1)=Y`, `(0,1)=Z`. The phase
//! convention follows `Y = iXZ`, so `X·Z = -iY`.
//!
//! Qubit 0 is the leftmost character of the string form.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::bits::BitVec;
use crate::error::{check_len, Error, Result};

/// Single-qubit Pauli label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    pub const ALL: [PauliKind; 4] = [PauliKind::I, PauliKind::X, PauliKind::Y, PauliKind::Z];
    pub const NON_IDENTITY: [PauliKind; 3] = [PauliKind::X, PauliKind::Y, PauliKind::Z];

    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliKind::I,
            (true, false) => PauliKind::X,
            (true, true) => PauliKind::Y,
            (false, true) => PauliKind::Z,
        }
    }

    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliKind::I => (false, false),
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            PauliKind::I => 'I',
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | '_' => Some(PauliKind::I),
            'X' => Some(PauliKind::X),
            'Y' => Some(PauliKind::Y),
            'Z' => Some(PauliKind::Z),
            _ => None,
        }
    }

    /// Rank in the canonical per-qubit order `I < X < Y < Z`.
    #[inline]
    pub fn order_key(self) -> u8 {
        self as u8
    }
}

/// Phase exponent contributed by multiplying per-position factors, as
/// `(plus_count - minus_count)` over packed words.
#[inline]
pub(crate) fn product_phase_words(x1: u64, z1: u64, x2: u64, z2: u64) -> i32 {
    let plus = (x1 & !z1 & x2 & z2) | (x1 & z1 & !x2 & z2) | (!x1 & z1 & x2 & !z2);
    let minus = (x1 & !z1 & !x2 & z2) | (x1 & z1 & x2 & !z2) | (!x1 & z1 & x2 & z2);
    plus.count_ones() as i32 - minus.count_ones() as i32
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        PauliOperator {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    /// `kind` on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, kind: PauliKind) -> Result<Self> {
        if q >= n {
            return Err(Error::IndexOutOfRange { index: q, len: n });
        }
        let mut p = PauliOperator::identity(n);
        p.set(q, kind);
        Ok(p)
    }

    pub fn from_bits(x: BitVec, z: BitVec, phase: u8) -> Result<Self> {
        check_len(x.len(), z.len())?;
        Ok(PauliOperator {
            x,
            z,
            phase: phase & 3,
        })
    }

    /// Builds from a symplectic vector laid out as `(x | z)`.
    pub fn from_symplectic(v: &BitVec) -> Result<Self> {
        if v.len() % 2 != 0 {
            return Err(Error::Dimension {
                expected: v.len() + 1,
                found: v.len(),
            });
        }
        let n = v.len() / 2;
        Ok(PauliOperator {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
            phase: 0,
        })
    }

    /// Tensor product of the given single-qubit factors, phase 0.
    pub fn from_kinds(kinds: &[PauliKind]) -> Self {
        let mut p = PauliOperator::identity(kinds.len());
        for (q, &k) in kinds.iter().enumerate() {
            p.set(q, k);
        }
        p
    }

    /// X-type operator with support given by `bits`.
    pub fn x_type(bits: &BitVec) -> Self {
        PauliOperator {
            x: bits.clone(),
            z: BitVec::zeros(bits.len()),
            phase: 0,
        }
    }

    /// Z-type operator with support given by `bits`.
    pub fn z_type(bits: &BitVec) -> Self {
        PauliOperator {
            x: BitVec::zeros(bits.len()),
            z: bits.clone(),
            phase: 0,
        }
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    /// Exponent of `i` in the global phase, in `0..4`.
    #[inline]
    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase & 3;
        self
    }

    pub fn set_phase(&mut self, phase: u8) {
        self.phase = phase & 3;
    }

    /// `true` when the operator is Hermitian (global phase ±1).
    #[inline]
    pub fn is_hermitian(&self) -> bool {
        self.phase % 2 == 0
    }

    /// Sign bit of a Hermitian operator: `true` for a leading `-`.
    ///
    /// Reads bit 1 of the phase exponent, so `±i` phases report the sign of
    /// the `i` coefficient.
    #[inline]
    pub fn sign_bit(&self) -> bool {
        self.phase & 2 != 0
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + 2) & 3;
        p
    }

    #[inline]
    pub fn get(&self, q: usize) -> PauliKind {
        PauliKind::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set(&mut self, q: usize, kind: PauliKind) {
        let (x, z) = kind.bits();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn kinds(&self) -> Vec<PauliKind> {
        (0..self.num_qubits()).map(|q| self.get(q)).collect()
    }

    /// Bits set where the factor is not I.
    pub fn support(&self) -> BitVec {
        let mut s = self.x.clone();
        s.or_assign(&self.z);
        s
    }

    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// Identity up to phase.
    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Equality ignoring the global phase.
    pub fn eq_up_to_phase(&self, other: &PauliOperator) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// `self · other` with exact phase.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        check_len(self.num_qubits(), other.num_qubits())?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    /// In-place `self ← self · other`; panics in debug builds on length mismatch.
    pub fn mul_assign_unchecked(&mut self, other: &PauliOperator) {
        debug_assert_eq!(self.num_qubits(), other.num_qubits());
        let mut ph = self.phase as i32 + other.phase as i32;
        for i in 0..self.x.words().len() {
            let (x1, z1) = (self.x.words()[i], self.z.words()[i]);
            let (x2, z2) = (other.x.words()[i], other.z.words()[i]);
            ph += product_phase_words(x1, z1, x2, z2);
        }
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
        self.phase = ph.rem_euclid(4) as u8;
    }

    #[inline]
    pub(crate) fn parts_mut(&mut self) -> (&mut BitVec, &mut BitVec, &mut u8) {
        (&mut self.x, &mut self.z, &mut self.phase)
    }

    /// Inverse element: flips the phase sign; the Pauli matrices are involutions.
    pub fn inverse(&self) -> PauliOperator {
        let mut p = self.clone();
        p.phase = (4 - p.phase) & 3;
        p
    }

    /// Symplectic inner product `x1·z2 + z1·x2 mod 2`.
    pub fn symplectic_product(&self, other: &PauliOperator) -> Result<bool> {
        check_len(self.num_qubits(), other.num_qubits())?;
        Ok(self.anticommutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &PauliOperator) -> bool {
        let mut acc = 0u32;
        for i in 0..self.x.words().len() {
            acc ^= ((self.x.words()[i] & other.z.words()[i])
                ^ (self.z.words()[i] & other.x.words()[i]))
                .count_ones();
        }
        acc & 1 == 1
    }

    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        Ok(!self.symplectic_product(other)?)
    }

    pub fn anticommutes(&self, other: &PauliOperator) -> Result<bool> {
        self.symplectic_product(other)
    }

    /// `(x | z)` vector of length `2n`.
    pub fn to_symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Interleaved `(x_0, z_0, x_1, z_1, …)` vector.
    pub fn to_interleaved(&self) -> BitVec {
        let n = self.num_qubits();
        let mut v = BitVec::zeros(2 * n);
        for q in self.x.iter_ones() {
            v.set(2 * q, true);
        }
        for q in self.z.iter_ones() {
            v.set(2 * q + 1, true);
        }
        v
    }

    pub fn from_interleaved(v: &BitVec) -> PauliOperator {
        let n = v.len() / 2;
        let mut p = PauliOperator::identity(n);
        for i in v.iter_ones() {
            if i % 2 == 0 {
                p.x.set(i / 2, true);
            } else {
                p.z.set(i / 2, true);
            }
        }
        p
    }

    /// Canonical order ignoring phase: the string order of the labels, with
    /// qubit 0 most significant and `I < X < Y < Z`.
    pub fn lex_cmp(&self, other: &PauliOperator) -> Ordering {
        for q in 0..self.num_qubits().min(other.num_qubits()) {
            let c = self.get(q).order_key().cmp(&other.get(q).order_key());
            if c != Ordering::Equal {
                return c;
            }
        }
        self.num_qubits().cmp(&other.num_qubits())
    }

    /// Orders by weight first, then [`lex_cmp`](Self::lex_cmp).
    pub fn weight_lex_cmp(&self, other: &PauliOperator) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.lex_cmp(other))
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &PauliOperator) -> PauliOperator {
        PauliOperator {
            x: self.x.concat(&other.x),
            z: self.z.concat(&other.z),
            phase: (self.phase + other.phase) & 3,
        }
    }

    /// Restriction to the listed qubits, in that order; phase dropped.
    pub fn restrict(&self, qubits: &[usize]) -> PauliOperator {
        let mut p = PauliOperator::identity(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            p.set(i, self.get(q));
        }
        p
    }

    /// Places this operator on `positions` of an `n`-qubit register.
    pub fn embed(&self, n: usize, positions: &[usize]) -> Result<PauliOperator> {
        check_len(self.num_qubits(), positions.len())?;
        let mut p = PauliOperator::identity(n).with_phase(self.phase);
        for (i, &q) in positions.iter().enumerate() {
            if q >= n {
                return Err(Error::IndexOutOfRange { index: q, len: n });
            }
            p.set(q, self.get(i));
        }
        Ok(p)
    }

    pub fn to_label(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })?;
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        let kinds = body
            .chars()
            .map(|c| {
                PauliKind::from_char(c).ok_or_else(|| {
                    Error::Parse(alloc::format!("invalid Pauli character {c:?} in {s:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliOperator::from_kinds(&kinds).with_phase(phase))
    }
}

impl serde::Serialize for PauliOperator {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for PauliOperator {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every Pauli on `n` qubits up to phase (`4^n` operators), in canonical order.
pub fn all_paulis(n: usize) -> impl Iterator<Item = PauliOperator> {
    let total: u64 = 1u64 << (2 * n);
    (0..total).map(move |code| {
        let mut p = PauliOperator::identity(n);
        for q in 0..n {
            let key = (code >> (2 * (n - 1 - q))) & 3;
            p.set(q, PauliKind::ALL[key as usize]);
        }
        p
    })
}

/// All Paulis of exactly weight `w` on `n` qubits, grouped by support in
/// lexicographic support order.
pub fn paulis_of_weight(n: usize, w: usize) -> impl Iterator<Item = PauliOperator> {
    crate::bits::combinations(n, w).flat_map(move |support| {
        let count = 3usize.pow(w as u32);
        (0..count).map(move |mut code| {
            let mut p = PauliOperator::identity(n);
            for &q in support.iter().rev() {
                p.set(q, PauliKind::NON_IDENTITY[code % 3]);
                code /= 3;
            }
            p
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let prod = p("X").multiply(&p("Z")).unwrap();
        assert!(prod.eq_up_to_phase(&p("Y")));
        assert_eq!(prod.phase(), 3);
        assert_eq!(prod.to_label(), "-iY");
    }

    #[test]
    fn squares_are_identity() {
        for s in ["X", "Y", "Z"] {
            let sq = p(s).multiply(&p(s)).unwrap();
            assert!(sq.is_identity());
            assert_eq!(sq.phase(), 0);
        }
    }

    #[test]
    fn parse_print_round_trip() {
        for s in ["+IXYZ", "-ZZ", "+iY", "-iXIX", "+"] {
            assert_eq!(p(s).to_label(), s);
        }
        assert_eq!(p("XZ").to_label(), "+XZ");
        assert!("XQ".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn length_mismatch_is_dimension_error() {
        assert!(matches!(
            p("X").multiply(&p("XX")),
            Err(Error::Dimension { .. })
        ));
        assert!(p("X").commutes(&p("XX")).is_err());
    }

    #[test]
    fn weight_enumeration_counts() {
        assert_eq!(paulis_of_weight(5, 2).count(), 10 * 9);
        assert_eq!(all_paulis(2).count(), 16);
        assert!(paulis_of_weight(4, 3).all(|q| q.weight() == 3));
    }

    #[test]
    fn canonical_order_matches_labels() {
        let mut v: Vec<_> = all_paulis(1).collect();
        v.sort_by(|a, b| a.lex_cmp(b));
        let labels: Vec<_> = v.iter().map(|q| q.to_label()).collect();
        assert_eq!(labels, ["+I", "+X", "+Y", "+Z"]);
    }
}
