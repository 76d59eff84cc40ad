//! Ideal decoding and filters for residual errors on a code block.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::codes::{LogicalClass, PauliLeaderTable, StabilizerCode};
use crate::error::{check_len, Error, Result};
use crate::pauli::PauliOperator;

/// A residual error on one block, reduced to a minimum-weight
/// representative modulo the stabilizer (ties in label order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualError {
    pub block: usize,
    pub pauli: PauliOperator,
}

/// Perfect syndrome decoding for one code.
#[derive(Clone, Debug)]
pub struct BlockDecoder {
    code: StabilizerCode,
    table: PauliLeaderTable,
}

/// Largest stabilizer group enumerated when reducing residuals.
const MAX_GROUP_BITS: usize = 20;

impl BlockDecoder {
    pub fn new(code: &StabilizerCode) -> Result<Self> {
        Ok(BlockDecoder {
            code: code.clone(),
            table: PauliLeaderTable::new(code)?,
        })
    }

    pub fn code(&self) -> &StabilizerCode {
        &self.code
    }

    pub fn table(&self) -> &PauliLeaderTable {
        &self.table
    }

    pub fn syndrome(&self, e: &PauliOperator) -> BitVec {
        BitVec::from_bools(
            &self
                .code
                .generators()
                .iter()
                .map(|g| e.anticommutes_unchecked(g))
                .collect::<Vec<_>>(),
        )
    }

    /// The correction an ideal decoder applies.
    pub fn leader(&self, e: &PauliOperator) -> &PauliOperator {
        self.table.leader(&self.syndrome(e))
    }

    /// Smallest weight in `e·N(S)`: the weight of the leader of its
    /// syndrome.
    pub fn filter_weight(&self, e: &PauliOperator) -> usize {
        self.leader(e).weight()
    }

    /// `e` lies within `r` errors of the code space.
    pub fn passes_filter(&self, e: &PauliOperator, r: usize) -> bool {
        self.filter_weight(e) <= r
    }

    /// Logical class left after ideal correction.
    pub fn ideal_decode(&self, e: &PauliOperator) -> LogicalClass {
        self.star_decode(e).0
    }

    /// Ideal decoding that also reports the syndrome.
    pub fn star_decode(&self, e: &PauliOperator) -> (LogicalClass, BitVec) {
        let s = self.syndrome(e);
        let mut r = e.clone();
        r.mul_assign_unchecked(self.table.leader(&s));
        let class = self.code.logical_class(&r).expect("block length");
        (class, s)
    }

    /// Minimum-weight representative of `e` modulo the stabilizer.
    pub fn reduce(&self, e: &PauliOperator) -> Result<PauliOperator> {
        check_len(self.code.n(), e.num_qubits())?;
        reduce_modulo_group(e, self.code.generators())
    }
}

/// Minimum-weight element of `e·⟨generators⟩` up to phase, ties in label
/// order. Enumerates the group, so at most 20 generators.
pub fn reduce_modulo_group(
    e: &PauliOperator,
    generators: &[PauliOperator],
) -> Result<PauliOperator> {
    if generators.len() > MAX_GROUP_BITS {
        return Err(Error::ResourceLimit {
            what: "stabilizer group enumeration generators",
            size: generators.len(),
            limit: MAX_GROUP_BITS,
        });
    }
    let mut best = e.clone().with_phase(0);
    let mut cur = best.clone();
    // Gray-code walk over all products.
    for i in 1u64..1u64 << generators.len() {
        let bit = i.trailing_zeros() as usize;
        cur.mul_assign_unchecked(&generators[bit]);
        let cand = cur.clone().with_phase(0);
        if cand.weight_lex_cmp(&best).is_lt() {
            best = cand;
        }
    }
    Ok(best)
}
