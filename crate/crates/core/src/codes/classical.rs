use alloc::vec::Vec;

use crate::bits::{combinations, BitMatrix, BitVec};
use crate::error::{check_len, Error, Result};

/// Binary linear code given by its parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalLinearCode {
    parity_check: BitMatrix,
}

const HAMMING_7_4: &str = include_str!("../../data/hamming_7_4.mat");

impl ClassicalLinearCode {
    pub fn from_parity_check(parity_check: BitMatrix) -> Self {
        ClassicalLinearCode { parity_check }
    }

    /// Code with the given generator matrix (its parity checks are the dual).
    pub fn from_generator(generator: &BitMatrix) -> Self {
        ClassicalLinearCode {
            parity_check: generator.nullspace(),
        }
    }

    /// The [7,4,3] Hamming code with checks `1111000 / 1100110 / 1010101`.
    pub fn hamming_7_4() -> Self {
        ClassicalLinearCode::from_parity_check(
            BitMatrix::parse(HAMMING_7_4).expect("bundled matrix parses"),
        )
    }

    /// The `[n, n, 1]` code with no checks.
    pub fn trivial(n: usize) -> Self {
        ClassicalLinearCode::from_parity_check(BitMatrix::zeros(0, n))
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.parity_check
    }

    pub fn n(&self) -> usize {
        self.parity_check.num_cols()
    }

    pub fn k(&self) -> usize {
        self.n() - self.parity_check.rank()
    }

    /// Basis of the code in reduced echelon form.
    pub fn generator_matrix(&self) -> BitMatrix {
        self.parity_check.nullspace()
    }

    /// The dual code, whose codewords are the row space of the checks.
    pub fn dual(&self) -> ClassicalLinearCode {
        ClassicalLinearCode::from_generator(&self.parity_check)
    }

    pub fn syndrome(&self, word: &BitVec) -> Result<BitVec> {
        check_len(self.n(), word.len())?;
        Ok(self.parity_check.mul_vec(word))
    }

    pub fn contains(&self, word: &BitVec) -> Result<bool> {
        Ok(self.syndrome(word)?.is_zero())
    }

    /// Minimum nonzero codeword weight; `None` for the zero code.
    pub fn distance(&self) -> Option<usize> {
        let g = self.generator_matrix();
        let k = g.num_rows();
        if k == 0 {
            return None;
        }
        if k <= 20 {
            let mut best = usize::MAX;
            for mask in 1u64..(1u64 << k) {
                let mut w = BitVec::zeros(self.n());
                for i in 0..k {
                    if mask >> i & 1 == 1 {
                        w.xor_assign(g.row(i));
                    }
                }
                best = best.min(w.count_ones());
            }
            return Some(best);
        }
        (1..=self.n()).find(|&w| {
            combinations(self.n(), w).any(|s| {
                let v = BitVec::from_ones(self.n(), s);
                self.parity_check.mul_vec(&v).is_zero()
            })
        })
    }

    /// `true` when every codeword of `other` is a codeword of `self`.
    pub fn contains_code(&self, other: &ClassicalLinearCode) -> Result<bool> {
        check_len(self.n(), other.n())?;
        Ok(other
            .generator_matrix()
            .rows()
            .iter()
            .all(|r| self.parity_check.mul_vec(r).is_zero()))
    }
}

/// Minimum-weight coset leader for every syndrome of a parity-check matrix,
/// ties broken by the string order of the words.
#[derive(Clone, Debug)]
pub struct ClassicalLeaderTable {
    checks: BitMatrix,
    leaders: Vec<BitVec>,
}

impl ClassicalLeaderTable {
    pub fn new(checks: &BitMatrix) -> Result<Self> {
        let m = checks.num_rows();
        let n = checks.num_cols();
        if m > 24 {
            return Err(Error::ResourceLimit {
                what: "syndrome table bits",
                size: m,
                limit: 24,
            });
        }
        let mut slots: Vec<Option<BitVec>> = alloc::vec![None; 1 << m];
        slots[0] = Some(BitVec::zeros(n));
        let mut filled = 1usize;
        let achievable = 1usize << checks.rank();
        for w in 1..=n {
            if filled == achievable {
                break;
            }
            let mut fresh: Vec<(usize, BitVec)> = Vec::new();
            for support in combinations(n, w) {
                let v = BitVec::from_ones(n, support);
                let s = checks.mul_vec(&v).to_u64() as usize;
                if slots[s].is_some() {
                    continue;
                }
                match fresh.iter_mut().find(|(k, _)| *k == s) {
                    Some((_, cur)) => {
                        if v.lex_cmp(cur).is_lt() {
                            *cur = v;
                        }
                    }
                    None => fresh.push((s, v)),
                }
            }
            for (s, v) in fresh {
                slots[s] = Some(v);
                filled += 1;
            }
        }
        Ok(ClassicalLeaderTable {
            checks: checks.clone(),
            leaders: slots
                .into_iter()
                .map(|s| s.unwrap_or_else(|| BitVec::zeros(n)))
                .collect(),
        })
    }

    pub fn checks(&self) -> &BitMatrix {
        &self.checks
    }

    pub fn leader(&self, syndrome: &BitVec) -> &BitVec {
        &self.leaders[syndrome.to_u64() as usize]
    }

    /// Syndrome as an integer, bit `i` from check row `i`.
    pub fn syndrome_index(&self, word: &BitVec) -> usize {
        self.checks.mul_vec(word).to_u64() as usize
    }

    pub fn leader_for_word(&self, word: &BitVec) -> &BitVec {
        &self.leaders[self.syndrome_index(word)]
    }

    /// `word + leader(syndrome(word))`, always a codeword.
    pub fn correct(&self, word: &BitVec) -> BitVec {
        word.xor(self.leader_for_word(word))
    }
}
