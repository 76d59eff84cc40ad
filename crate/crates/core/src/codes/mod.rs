//! Stabilizer codes: validation, syndromes, distance and logical operators.

mod bounds;
mod classical;
mod css;
mod kl;
mod registry;
mod text;

pub use bounds::{
    asymptotic_rate_bounds, binary_entropy, gv_bound, hamming_bound, singleton_bound, BoundCheck,
    RateBounds,
};
pub use classical::{ClassicalLeaderTable, ClassicalLinearCode};
pub use css::{css_construct, CssView};
pub use kl::{codeword_basis, stabilizer_state, verify_knill_laflamme, KLReport, KL_TOLERANCE};
pub use registry::{bundled, bundled_names, BundledCode};
pub use text::{parse_code, write_code};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{BitMatrix, BitVec, RowReducer};
use crate::error::{check_len, Error, Result};
use crate::pauli::{paulis_of_weight, PauliKind, PauliOperator};

/// Default qubit cap for enumeration-based routines such as [`StabilizerCode::distance`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 16;

/// Candidate budget for the minimum-weight search in
/// [`StabilizerCode::error_for_syndrome`].
pub const ERROR_SEARCH_BUDGET: usize = 2_000_000;

#[derive(Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    name: String,
    n: usize,
    generators: Vec<PauliOperator>,
    logical_x: Vec<PauliOperator>,
    logical_z: Vec<PauliOperator>,
}

/// A broken invariant found by [`StabilizerCode::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongLength {
        index: usize,
        found: usize,
    },
    NonHermitian {
        index: usize,
    },
    NonCommuting {
        i: usize,
        j: usize,
    },
    Dependent {
        rank: usize,
        count: usize,
    },
    /// A signed product of the listed generators equals `-I` (or `±iI`).
    ContainsMinusIdentity {
        subset: Vec<usize>,
    },
    LogicalCount {
        x: usize,
        z: usize,
        expected: usize,
    },
    /// A logical operator anticommutes with a stabilizer generator.
    LogicalNotInNormalizer {
        label: String,
        generator: usize,
    },
    /// `logical_x[i]` and `logical_z[j]` have the wrong commutation relation,
    /// or two same-type logicals fail to commute.
    LogicalPairing {
        left: String,
        right: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongLength { index, found } => {
                write!(f, "generator {index} has length {found}")
            }
            Violation::NonHermitian { index } => write!(f, "generator {index} has phase ±i"),
            Violation::NonCommuting { i, j } => {
                write!(f, "generators {i} and {j} anticommute")
            }
            Violation::Dependent { rank, count } => {
                write!(f, "generators are dependent (rank {rank} of {count})")
            }
            Violation::ContainsMinusIdentity { subset } => {
                write!(f, "product of generators {subset:?} is -I")
            }
            Violation::LogicalCount { x, z, expected } => write!(
                f,
                "expected {expected} logical pairs, found {x} X and {z} Z representatives"
            ),
            Violation::LogicalNotInNormalizer { label, generator } => {
                write!(f, "logical {label} anticommutes with generator {generator}")
            }
            Violation::LogicalPairing { left, right } => {
                write!(f, "logicals {left} and {right} have the wrong commutation")
            }
        }
    }
}

/// Logical Pauli class of an operator in the normalizer: `X̄^x Z̄^z` per
/// logical qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogicalClass {
    pub x: BitVec,
    pub z: BitVec,
}

impl LogicalClass {
    pub fn identity(k: usize) -> Self {
        LogicalClass {
            x: BitVec::zeros(k),
            z: BitVec::zeros(k),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn compose(&self, other: &LogicalClass) -> LogicalClass {
        LogicalClass {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        }
    }
}

impl StabilizerCode {
    /// Builds a code without validating; see [`validate`](Self::validate).
    pub fn new_unchecked(
        name: impl Into<String>,
        n: usize,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Self {
        StabilizerCode {
            name: name.into(),
            n,
            generators,
            logical_x,
            logical_z,
        }
    }

    /// Validates the generators and computes minimum-weight logical operators.
    pub fn from_generators(
        name: impl Into<String>,
        n: usize,
        generators: Vec<PauliOperator>,
    ) -> Result<Self> {
        let mut code = StabilizerCode::new_unchecked(name, n, generators, Vec::new(), Vec::new());
        code.ensure_valid_generators()?;
        let (lx, lz) = code.logical_operators();
        code.logical_x = lx;
        code.logical_z = lz;
        Ok(code)
    }

    /// Like [`from_generators`](Self::from_generators) with given logical
    /// representatives, which must pass validation.
    pub fn with_logicals(
        name: impl Into<String>,
        n: usize,
        generators: Vec<PauliOperator>,
        logical_x: Vec<PauliOperator>,
        logical_z: Vec<PauliOperator>,
    ) -> Result<Self> {
        let code = StabilizerCode::new_unchecked(name, n, generators, logical_x, logical_z);
        let v = code.validate();
        if !v.is_empty() {
            return Err(violations_error(&v));
        }
        Ok(code)
    }

    fn ensure_valid_generators(&self) -> Result<()> {
        let v = self.validate_generators();
        if v.is_empty() {
            Ok(())
        } else {
            Err(violations_error(&v))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of generators.
    #[inline]
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Number of logical qubits, `n - rank(S)`.
    pub fn k(&self) -> usize {
        self.n - self.symplectic_matrix().rank()
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    pub fn logical_x(&self) -> &[PauliOperator] {
        &self.logical_x
    }

    pub fn logical_z(&self) -> &[PauliOperator] {
        &self.logical_z
    }

    /// Generators as rows of `(x | z)` vectors.
    pub fn symplectic_matrix(&self) -> BitMatrix {
        let rows = self.generators.iter().map(|g| g.to_symplectic()).collect();
        BitMatrix::from_rows(2 * self.n, rows).expect("generator lengths checked by validate")
    }

    /// Matrix `A` with `A · interleaved(e) = syndrome(e)`.
    fn syndrome_matrix(&self) -> BitMatrix {
        let rows = self
            .generators
            .iter()
            .map(|g| {
                let mut r = BitVec::zeros(2 * self.n);
                for q in g.z_bits().iter_ones() {
                    r.set(2 * q, true);
                }
                for q in g.x_bits().iter_ones() {
                    r.set(2 * q + 1, true);
                }
                r
            })
            .collect();
        BitMatrix::from_rows(2 * self.n, rows).expect("lengths")
    }

    fn validate_generators(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut lengths_ok = true;
        for (i, g) in self.generators.iter().enumerate() {
            if g.num_qubits() != self.n {
                out.push(Violation::WrongLength {
                    index: i,
                    found: g.num_qubits(),
                });
                lengths_ok = false;
            } else if !g.is_hermitian() {
                out.push(Violation::NonHermitian { index: i });
            }
        }
        if !lengths_ok {
            return out;
        }
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                if self.generators[i].anticommutes_unchecked(&self.generators[j]) {
                    out.push(Violation::NonCommuting { i, j });
                }
            }
        }
        let m = self.symplectic_matrix();
        let rank = m.rank();
        if rank < self.generators.len() {
            out.push(Violation::Dependent {
                rank,
                count: self.generators.len(),
            });
            // each relation among generators is a product equal to ±I or ±iI
            let relations = m.transpose().nullspace();
            for rel in relations.rows() {
                let mut prod = PauliOperator::identity(self.n);
                for i in rel.iter_ones() {
                    prod.mul_assign_unchecked(&self.generators[i]);
                }
                if prod.phase() != 0 {
                    out.push(Violation::ContainsMinusIdentity {
                        subset: rel.iter_ones().collect(),
                    });
                }
            }
        }
        out
    }

    /// Every broken invariant; empty when the code is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.validate_generators();
        if !out.is_empty() {
            return out;
        }
        let k = self.k();
        if self.logical_x.len() != k || self.logical_z.len() != k {
            out.push(Violation::LogicalCount {
                x: self.logical_x.len(),
                z: self.logical_z.len(),
                expected: k,
            });
            return out;
        }
        let labelled: Vec<(String, &PauliOperator)> = self
            .logical_x
            .iter()
            .enumerate()
            .map(|(i, p)| (alloc::format!("X{i}"), p))
            .chain(
                self.logical_z
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (alloc::format!("Z{i}"), p)),
            )
            .collect();
        for (label, p) in &labelled {
            if p.num_qubits() != self.n {
                out.push(Violation::LogicalCount {
                    x: self.logical_x.len(),
                    z: self.logical_z.len(),
                    expected: k,
                });
                return out;
            }
            for (gi, g) in self.generators.iter().enumerate() {
                if p.anticommutes_unchecked(g) {
                    out.push(Violation::LogicalNotInNormalizer {
                        label: label.clone(),
                        generator: gi,
                    });
                }
            }
        }
        for a in 0..labelled.len() {
            for b in a + 1..labelled.len() {
                // X_i and Z_i must anticommute; every other pair commutes
                let partner = a < k && b == a + k;
                if labelled[a].1.anticommutes_unchecked(labelled[b].1) != partner {
                    out.push(Violation::LogicalPairing {
                        left: labelled[a].0.clone(),
                        right: labelled[b].0.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Bit `i` set when `e` anticommutes with generator `i`.
    pub fn syndrome(&self, e: &PauliOperator) -> Result<BitVec> {
        check_len(self.n, e.num_qubits())?;
        Ok(self.syndrome_unchecked(e))
    }

    pub(crate) fn syndrome_unchecked(&self, e: &PauliOperator) -> BitVec {
        let mut s = BitVec::zeros(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            if g.anticommutes_unchecked(e) {
                s.set(i, true);
            }
        }
        s
    }

    /// A Pauli (phase 0) with syndrome `v`: the least one in weight-then-label
    /// order, so the result is a minimum-weight coset leader.
    ///
    /// When no solution turns up within a fixed search budget of
    /// [`ERROR_SEARCH_BUDGET`] candidates, the least solution in pure label
    /// order is returned instead; it is found by linear algebra.
    pub fn error_for_syndrome(&self, v: &BitVec) -> Result<PauliOperator> {
        check_len(self.generators.len(), v.len())?;
        let a = self.syndrome_matrix();
        if a.solve(v).is_none() {
            return Err(Error::Construction(alloc::format!(
                "syndrome {v} is not achievable; generators are dependent"
            )));
        }
        if v.is_zero() {
            return Ok(PauliOperator::identity(self.n));
        }
        let mut spent = 0usize;
        for w in 1..=self.n {
            let mut best: Option<PauliOperator> = None;
            for p in paulis_of_weight(self.n, w) {
                spent += 1;
                if spent > ERROR_SEARCH_BUDGET {
                    return Ok(self.label_least_error(&a, v));
                }
                if &self.syndrome_unchecked(&p) == v
                    && best.as_ref().is_none_or(|b| p.lex_cmp(b).is_lt())
                {
                    best = Some(p);
                }
            }
            if let Some(b) = best {
                return Ok(b);
            }
        }
        Ok(self.label_least_error(&a, v))
    }

    /// The least Pauli in label order with syndrome `v` (assumed achievable).
    pub(crate) fn label_least_error(&self, a: &BitMatrix, v: &BitVec) -> PauliOperator {
        // fix qubits left to right, taking the smallest label that keeps the
        // system solvable
        let n = self.n;
        let mut fixed = PauliOperator::identity(n);
        for q in 0..n {
            for kind in PauliKind::ALL {
                fixed.set(q, kind);
                if self.prefix_solvable(a, v, &fixed, q + 1) {
                    break;
                }
            }
        }
        fixed
    }

    /// Whether some operator agreeing with `prefix` on qubits `0..len` has
    /// syndrome `v`.
    fn prefix_solvable(
        &self,
        a: &BitMatrix,
        v: &BitVec,
        prefix: &PauliOperator,
        len: usize,
    ) -> bool {
        let n = self.n;
        let mut target = v.clone();
        let mut head = prefix.clone();
        for q in len..n {
            head.set(q, PauliKind::I);
        }
        target.xor_assign(&self.syndrome_unchecked(&head));
        if len == n {
            return target.is_zero();
        }
        let cols = 2 * (n - len);
        let rows = a
            .rows()
            .iter()
            .map(|r| r.slice(2 * len, 2 * n))
            .collect::<Vec<_>>();
        let sub = BitMatrix::from_rows(cols, rows).expect("lengths");
        sub.solve(&target).is_some()
    }

    /// `true` when `p` equals a product of generators up to phase.
    pub fn in_stabilizer_group(&self, p: &PauliOperator) -> Result<bool> {
        check_len(self.n, p.num_qubits())?;
        Ok(RowReducer::new(&self.symplectic_matrix()).contains(&p.to_symplectic()))
    }

    /// `true` when `p` commutes with every generator.
    pub fn in_normalizer(&self, p: &PauliOperator) -> Result<bool> {
        Ok(self.syndrome(p)?.is_zero())
    }

    /// Logical class of `p` read from its commutation with the logical
    /// representatives: the `X̄_i` bit comes from `Z̄_i`, the `Z̄_i` bit
    /// from `X̄_i`.
    pub fn logical_class(&self, p: &PauliOperator) -> Result<LogicalClass> {
        check_len(self.n, p.num_qubits())?;
        let k = self.logical_x.len();
        let mut c = LogicalClass::identity(k);
        for i in 0..k {
            c.x.set(i, p.anticommutes_unchecked(&self.logical_z[i]));
            c.z.set(i, p.anticommutes_unchecked(&self.logical_x[i]));
        }
        Ok(c)
    }

    /// Representative `Π X̄^x Z̄^z` of a logical class.
    pub fn logical_operator(&self, class: &LogicalClass) -> PauliOperator {
        let mut p = PauliOperator::identity(self.n);
        for i in class.x.iter_ones() {
            p.mul_assign_unchecked(&self.logical_x[i]);
        }
        for i in class.z.iter_ones() {
            p.mul_assign_unchecked(&self.logical_z[i]);
        }
        p.with_phase(0)
    }

    /// Minimum weight of an operator in `N(S) \ S`.
    pub fn distance(&self) -> Result<usize> {
        self.distance_with_limit(DEFAULT_ENUMERATION_LIMIT)
    }

    pub fn distance_with_limit(&self, limit: usize) -> Result<usize> {
        if self.n > limit {
            return Err(Error::ResourceLimit {
                what: "distance enumeration qubits",
                size: self.n,
                limit,
            });
        }
        self.ensure_valid_generators()?;
        let reducer = RowReducer::new(&self.symplectic_matrix());
        for w in 1..=self.n {
            for p in paulis_of_weight(self.n, w) {
                if self.syndrome_unchecked(&p).is_zero() && !reducer.contains(&p.to_symplectic()) {
                    return Ok(w);
                }
            }
        }
        Err(Error::Domain(alloc::format!(
            "code {} has no logical operators (k = 0)",
            self.name
        )))
    }

    /// Computes `k` logical pairs, preferring minimum weight with ties broken
    /// in label order.
    ///
    /// `X̄_i` is chosen first as the least candidate independent of the
    /// stabilizer and earlier choices, then `Z̄_i` as the least candidate
    /// anticommuting with it. CSS codes get X-type `X̄` and Z-type `Z̄`.
    /// Above the enumeration limit a symplectic Gram-Schmidt basis is
    /// returned without weight minimization.
    pub fn logical_operators(&self) -> (Vec<PauliOperator>, Vec<PauliOperator>) {
        let k = self.k();
        if k == 0 {
            return (Vec::new(), Vec::new());
        }
        if self.n > DEFAULT_ENUMERATION_LIMIT {
            return self.logical_operators_algebraic();
        }
        if self.is_css() {
            return css::css_logicals(self);
        }
        let mut lx: Vec<PauliOperator> = Vec::new();
        let mut lz: Vec<PauliOperator> = Vec::new();
        let mut span = self.symplectic_matrix();
        while lz.len() < k {
            let reducer = RowReducer::new(&span);
            let commutes_with_chosen = |p: &PauliOperator| {
                lx.iter()
                    .chain(lz.iter())
                    .all(|l| !l.anticommutes_unchecked(p))
            };
            let x = self.least_in_normalizer(|p| {
                commutes_with_chosen(p) && !reducer.contains(&p.to_symplectic())
            });
            let z = self
                .least_in_normalizer(|p| commutes_with_chosen(p) && p.anticommutes_unchecked(&x));
            span.push_row(z.to_symplectic()).expect("length");
            span.push_row(x.to_symplectic()).expect("length");
            lz.push(z);
            lx.push(x);
        }
        (lx, lz)
    }

    fn least_in_normalizer(&self, accept: impl Fn(&PauliOperator) -> bool) -> PauliOperator {
        for w in 1..=self.n {
            let mut best: Option<PauliOperator> = None;
            for p in paulis_of_weight(self.n, w) {
                if self.syndrome_unchecked(&p).is_zero() && accept(&p) {
                    let better = best.as_ref().is_none_or(|b| p.lex_cmp(b).is_lt());
                    if better {
                        best = Some(p);
                    }
                }
            }
            if let Some(b) = best {
                return b;
            }
        }
        unreachable!("the normalizer of a valid code with k > 0 has the requested elements")
    }

    fn logical_operators_algebraic(&self) -> (Vec<PauliOperator>, Vec<PauliOperator>) {
        let k = self.k();
        let normalizer = self.syndrome_matrix().nullspace();
        let mut candidates: Vec<PauliOperator> = normalizer
            .rows()
            .iter()
            .map(PauliOperator::from_interleaved)
            .collect();
        let mut span = self.symplectic_matrix();
        let mut lx = Vec::new();
        let mut lz = Vec::new();
        while lz.len() < k {
            let reducer = RowReducer::new(&span);
            let zi = candidates
                .iter()
                .position(|c| !reducer.contains(&c.to_symplectic()))
                .expect("normalizer larger than stabilizer");
            let z = candidates.swap_remove(zi);
            let xi = candidates
                .iter()
                .position(|c| c.anticommutes_unchecked(&z))
                .expect("symplectic partner exists");
            let x = candidates.swap_remove(xi);
            // keep the remaining candidates commuting with the new pair
            for c in candidates.iter_mut() {
                if c.anticommutes_unchecked(&z) {
                    c.mul_assign_unchecked(&x);
                }
                if c.anticommutes_unchecked(&x) {
                    c.mul_assign_unchecked(&z);
                }
                c.set_phase(0);
            }
            span.push_row(z.to_symplectic()).expect("length");
            span.push_row(x.to_symplectic()).expect("length");
            lz.push(z);
            lx.push(x);
        }
        (lx, lz)
    }

    /// Number of cosets of `S` inside `N(S)`, ignoring phases, counted by
    /// enumerating every Pauli. Equals `4^k` for a valid code.
    pub fn count_normalizer_cosets(&self) -> Result<usize> {
        if self.n > 10 {
            return Err(Error::ResourceLimit {
                what: "normalizer coset enumeration qubits",
                size: self.n,
                limit: 10,
            });
        }
        let reducer = RowReducer::new(&self.symplectic_matrix());
        let mut reps: Vec<BitVec> = Vec::new();
        for p in crate::pauli::all_paulis(self.n) {
            if self.syndrome_unchecked(&p).is_zero() {
                let r = reducer.reduce(&p.to_symplectic());
                if !reps.contains(&r) {
                    reps.push(r);
                }
            }
        }
        Ok(reps.len())
    }

    /// `true` when every generator is purely X-type or purely Z-type.
    pub fn is_css(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.x_bits().is_zero() || g.z_bits().is_zero())
    }

    /// A copy whose generators also include the given (commuting) operators,
    /// reducing `k` accordingly. Logical operators are recomputed.
    pub fn augmented(&self, extra: &[PauliOperator], name: impl Into<String>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        StabilizerCode::from_generators(name, self.n, gens)
    }
}

impl fmt::Debug for StabilizerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StabilizerCode({} n={} gens=[", self.name, self.n)?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("])")
    }
}

fn violations_error(v: &[Violation]) -> Error {
    let parts: Vec<String> = v.iter().map(|x| alloc::format!("{x}")).collect();
    Error::Construction(parts.join("; "))
}

/// Minimum-weight representative per syndrome (coset leaders), ties broken
/// in label order. Built once per code for decoding.
#[derive(Clone, Debug)]
pub struct PauliLeaderTable {
    leaders: Vec<PauliOperator>,
}

impl PauliLeaderTable {
    pub fn new(code: &StabilizerCode) -> Result<Self> {
        let a = code.num_generators();
        if a > 24 {
            return Err(Error::ResourceLimit {
                what: "syndrome table bits",
                size: a,
                limit: 24,
            });
        }
        let size = 1usize << a;
        let mut slots: Vec<Option<PauliOperator>> = alloc::vec![None; size];
        let mut filled = 0;
        slots[0] = Some(PauliOperator::identity(code.n()));
        filled += 1;
        let achievable = 1usize << code.symplectic_matrix().rank();
        for w in 1..=code.n() {
            if filled == achievable {
                break;
            }
            let mut fresh: Vec<(usize, PauliOperator)> = Vec::new();
            for p in paulis_of_weight(code.n(), w) {
                let s = code.syndrome_unchecked(&p).to_u64() as usize;
                if slots[s].is_some() {
                    continue;
                }
                match fresh.iter_mut().find(|(k, _)| *k == s) {
                    Some((_, cur)) => {
                        if p.lex_cmp(cur).is_lt() {
                            *cur = p;
                        }
                    }
                    None => fresh.push((s, p)),
                }
            }
            for (s, p) in fresh {
                slots[s] = Some(p);
                filled += 1;
            }
        }
        Ok(PauliLeaderTable {
            leaders: slots
                .into_iter()
                .map(|s| s.unwrap_or_else(|| PauliOperator::identity(code.n())))
                .collect(),
        })
    }

    pub fn leader(&self, syndrome: &BitVec) -> &PauliOperator {
        &self.leaders[syndrome.to_u64() as usize]
    }

    pub fn leader_index(&self, syndrome: usize) -> &PauliOperator {
        &self.leaders[syndrome]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn anticommuting_generators_are_reported() {
        let code = StabilizerCode::new_unchecked(
            "bad",
            1,
            alloc::vec![p("X"), p("Z")],
            Vec::new(),
            Vec::new(),
        );
        let v = code.validate();
        assert!(v.contains(&Violation::NonCommuting { i: 0, j: 1 }));
    }

    #[test]
    fn xx_yy_zz_contains_minus_identity() {
        let code = StabilizerCode::new_unchecked(
            "bad",
            2,
            alloc::vec![p("XX"), p("YY"), p("ZZ")],
            Vec::new(),
            Vec::new(),
        );
        let v = code.validate();
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::Dependent { rank: 2, count: 3 })));
        assert!(v.iter().any(
            |x| matches!(x, Violation::ContainsMinusIdentity { subset } if subset.len() == 3)
        ));
    }

    #[test]
    fn empty_stabilizer_is_full_space() {
        let code = StabilizerCode::from_generators("free", 3, Vec::new()).unwrap();
        assert_eq!(code.k(), 3);
        assert!(code.is_valid());
        assert_eq!(code.distance().unwrap(), 1);
        assert_eq!(
            code.error_for_syndrome(&BitVec::zeros(0)).unwrap(),
            PauliOperator::identity(3)
        );
    }

    #[test]
    fn distance_guard() {
        let code = StabilizerCode::from_generators("free", 20, Vec::new()).unwrap();
        assert!(matches!(code.distance(), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn repetition_code_least_error() {
        let code =
            StabilizerCode::from_generators("rep3", 3, alloc::vec![p("ZZI"), p("IZZ")]).unwrap();
        let e = code
            .error_for_syndrome(&BitVec::parse("10").unwrap())
            .unwrap();
        assert_eq!(code.syndrome(&e).unwrap(), BitVec::parse("10").unwrap());
        assert_eq!(e.to_label(), "+XII");
        let a = code.syndrome_matrix();
        assert_eq!(
            code.label_least_error(&a, &BitVec::parse("10").unwrap())
                .to_label(),
            "+IXX"
        );
    }
}
