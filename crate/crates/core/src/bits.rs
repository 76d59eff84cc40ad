//! Packed bit vectors and dense GF(2) matrices.
//!
//! Bit `i` of a [`BitVec`] lives in word `i / 64` at position `i % 64`.
//! Lexicographic comparisons treat index 0 as the most significant position.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{check_len, Error, Result};

#[inline]
pub(crate) fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector with ones at the given positions.
    pub fn from_ones(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVec::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    /// Low `len` bits of `value`, bit 0 of the integer at index 0.
    pub fn from_u64(len: usize, value: u64) -> Self {
        let mut v = BitVec::zeros(len);
        if len > 0 {
            v.words[0] = value;
            v.mask_tail();
        }
        v
    }

    /// Parses a string of `0`/`1` characters (whitespace ignored).
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                other => {
                    return Err(Error::Parse(alloc::format!(
                        "invalid bit character {other:?}"
                    )))
                }
            }
        }
        Ok(BitVec::from_bools(&bits))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn mask_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn or_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        debug_assert_eq!(self.len, other.len);
        BitVec {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `true` when every set bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Parity of the bitwise AND, i.e. the GF(2) inner product.
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let tz = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + tz)
                }
            })
        })
    }

    /// First set index, if any.
    pub fn first_one(&self) -> Option<usize> {
        self.iter_ones().next()
    }

    /// Integer whose bit `i` is element `i`; requires `len <= 64`.
    pub fn to_u64(&self) -> u64 {
        debug_assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn to_bools(&self) -> Vec<bool> {
        self.iter().collect()
    }

    /// Lexicographic order with index 0 most significant.
    pub fn lex_cmp(&self, other: &BitVec) -> Ordering {
        for (a, b) in self.words.iter().zip(&other.words) {
            if a != b {
                // lowest differing index decides
                let diff = a ^ b;
                let i = diff.trailing_zeros();
                return if (a >> i) & 1 == 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        self.len.cmp(&other.len)
    }

    /// Concatenation `self ‖ other`.
    pub fn concat(&self, other: &BitVec) -> BitVec {
        let mut out = BitVec::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVec {
        BitVec::from_ones(
            end - start,
            self.iter_ones()
                .filter(|&i| i >= start && i < end)
                .map(|i| i - start),
        )
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense matrix over GF(2), stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

/// Reduced row echelon form together with the pivot column of each row.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: BitMatrix,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        for r in &rows {
            check_len(cols, r.len())?;
        }
        Ok(BitMatrix { cols, rows })
    }

    /// Parses whitespace-separated rows of `0`/`1` characters, one row per
    /// non-empty line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            rows.push(BitVec::parse(line)?);
        }
        let cols = rows.first().map_or(0, BitVec::len);
        BitMatrix::from_rows(cols, rows)
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        check_len(self.cols, row.len())?;
        self.rows.push(row);
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows.len());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.rows[c].set(r, true);
            }
        }
        t
    }

    /// `self · v` as a vector of row parities.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        debug_assert_eq!(self.cols, v.len());
        BitVec::from_bools(&self.rows.iter().map(|r| r.dot(v)).collect::<Vec<_>>())
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, other.rows.len())?;
        let mut out = BitMatrix::zeros(self.rows.len(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.iter_ones() {
                out.rows[r].xor_assign(&other.rows[k]);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form; zero rows are dropped.
    pub fn echelon(&self) -> Echelon {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Echelon {
            matrix: BitMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of `{v : self · v = 0}` in reduced echelon form.
    pub fn nullspace(&self) -> BitMatrix {
        let ech = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &p in &ech.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (row, &p) in ech.matrix.rows.iter().zip(&ech.pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        BitMatrix {
            cols: self.cols,
            rows: basis,
        }
        .echelon()
        .matrix
    }

    /// Some `x` with `self · x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        debug_assert_eq!(b.len(), self.rows.len());
        // eliminate on the augmented matrix [A | b]
        let aug_rows: Vec<BitVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut a = BitVec::zeros(self.cols + 1);
                for c in r.iter_ones() {
                    a.set(c, true);
                }
                a.set(self.cols, b.get(i));
                a
            })
            .collect();
        let aug = BitMatrix {
            cols: self.cols + 1,
            rows: aug_rows,
        };
        let ech = aug.echelon();
        let mut x = BitVec::zeros(self.cols);
        for (row, &p) in ech.matrix.rows.iter().zip(&ech.pivots) {
            if p == self.cols {
                return None;
            }
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Some(x)
    }

    /// Lexicographically least element of `{x : self · x = b}`.
    pub fn solve_least(&self, b: &BitVec) -> Option<BitVec> {
        let x = self.solve(b)?;
        Some(self.nullspace_reducer().reduce(&x))
    }

    fn nullspace_reducer(&self) -> RowReducer {
        RowReducer::new(&self.nullspace())
    }

    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_len(self.cols, other.cols)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(BitMatrix {
            cols: self.cols,
            rows,
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows.len(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Reduces vectors modulo a fixed row space.
///
/// After reduction every pivot column of the space is zero, which makes the
/// result the lexicographically least member of the coset `v + rowspace`.
#[derive(Clone, Debug)]
pub struct RowReducer {
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(space: &BitMatrix) -> Self {
        let ech = space.echelon();
        RowReducer {
            rows: ech.matrix.rows,
            pivots: ech.pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Like [`reduce`](Self::reduce), also returning which basis rows were
    /// used (in the echelon basis order).
    pub fn reduce_with_combination(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut out = v.clone();
        let mut used = BitVec::zeros(self.rows.len());
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if out.get(p) {
                out.xor_assign(row);
                used.set(i, true);
            }
        }
        (out, used)
    }
}

/// Iterates all `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut state: Option<Vec<usize>> = if k <= n { Some((0..k).collect()) } else { None };
    core::iter::from_fn(move || {
        let current = state.take()?;
        let mut next = current.clone();
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if advanced {
            state = Some(next);
        }
        Some(current)
    })
}
