use alloc::vec::Vec;

use super::classical::{ClassicalLeaderTable, ClassicalLinearCode};
use super::StabilizerCode;
use crate::bits::{combinations, BitMatrix, BitVec, RowReducer};
use crate::error::{check_len, Error, Result};
use crate::pauli::PauliOperator;

/// CSS construction: Z-type generators from the checks of `c1`, X-type
/// generators from the checks of `c2`.
///
/// Requires the dual of `c2` to lie inside `c1`; the first check of `c2`
/// that is not a codeword of `c1` is named in the error. Dependent checks
/// are dropped, keeping the first occurrence.
pub fn css_construct(c1: &ClassicalLinearCode, c2: &ClassicalLinearCode) -> Result<StabilizerCode> {
    check_len(c1.n(), c2.n())?;
    let n = c1.n();
    for row in c2.parity_check().rows() {
        if !c1.parity_check().mul_vec(row).is_zero() {
            return Err(Error::Construction(alloc::format!(
                "dual codeword {row} of the second code is not in the first code"
            )));
        }
    }
    let mut gens = Vec::new();
    for row in independent_rows(c1.parity_check()) {
        gens.push(PauliOperator::z_type(&row));
    }
    for row in independent_rows(c2.parity_check()) {
        gens.push(PauliOperator::x_type(&row));
    }
    StabilizerCode::from_generators("css", n, gens)
}

fn independent_rows(m: &BitMatrix) -> Vec<BitVec> {
    let mut kept = BitMatrix::zeros(0, m.num_cols());
    let mut out = Vec::new();
    for row in m.rows() {
        if !RowReducer::new(&kept).contains(row) {
            kept.push_row(row.clone()).expect("length");
            out.push(row.clone());
        }
    }
    out
}

/// Minimum-weight logical pairs for a CSS code with `X̄` X-type and `Z̄`
/// Z-type, ties broken in string order.
pub(crate) fn css_logicals(code: &StabilizerCode) -> (Vec<PauliOperator>, Vec<PauliOperator>) {
    let n = code.n();
    let view = CssView::split(code);
    let k = code.k();
    let mut xs: Vec<BitVec> = Vec::new();
    let mut zs: Vec<BitVec> = Vec::new();
    let mut x_span = view.hx.clone();
    while xs.len() < k {
        let reducer = RowReducer::new(&x_span);
        let u = least_word(n, |w| {
            view.hz.mul_vec(w).is_zero() && zs.iter().all(|z| !z.dot(w)) && !reducer.contains(w)
        });
        let v = least_word(n, |w| {
            view.hx.mul_vec(w).is_zero() && xs.iter().all(|x| !x.dot(w)) && u.dot(w)
        });
        x_span.push_row(u.clone()).expect("length");
        xs.push(u);
        zs.push(v);
    }
    (
        xs.iter().map(PauliOperator::x_type).collect(),
        zs.iter().map(PauliOperator::z_type).collect(),
    )
}

fn least_word(n: usize, accept: impl Fn(&BitVec) -> bool) -> BitVec {
    for w in 1..=n {
        let mut best: Option<BitVec> = None;
        for s in combinations(n, w) {
            let v = BitVec::from_ones(n, s);
            if accept(&v) && best.as_ref().is_none_or(|b| v.lex_cmp(b).is_lt()) {
                best = Some(v);
            }
        }
        if let Some(b) = best {
            return b;
        }
    }
    unreachable!("a CSS code with k > 0 has logical words of every required kind")
}

/// A CSS code split into its X-error and Z-error halves.
///
/// `hz` holds the supports of the Z-type generators (they detect X errors)
/// and `hx` those of the X-type generators. Logical operators are in
/// standard form: every `X̄_i` is X-type and every `Z̄_i` is Z-type.
#[derive(Clone, Debug)]
pub struct CssView {
    pub n: usize,
    pub hz: BitMatrix,
    pub hx: BitMatrix,
    /// Generator index of each `hz` row.
    pub z_generators: Vec<usize>,
    /// Generator index of each `hx` row.
    pub x_generators: Vec<usize>,
    /// Supports of the `X̄_i`.
    pub logical_x: Vec<BitVec>,
    /// Supports of the `Z̄_i`.
    pub logical_z: Vec<BitVec>,
    pub x_decoder: ClassicalLeaderTable,
    pub z_decoder: ClassicalLeaderTable,
}

impl CssView {
    fn split(code: &StabilizerCode) -> CssView {
        let n = code.n();
        let mut hz = BitMatrix::zeros(0, n);
        let mut hx = BitMatrix::zeros(0, n);
        let mut zg = Vec::new();
        let mut xg = Vec::new();
        for (i, g) in code.generators().iter().enumerate() {
            if g.x_bits().is_zero() {
                hz.push_row(g.z_bits().clone()).expect("length");
                zg.push(i);
            } else {
                hx.push_row(g.x_bits().clone()).expect("length");
                xg.push(i);
            }
        }
        let x_decoder = ClassicalLeaderTable::new(&hz).expect("small CSS code");
        let z_decoder = ClassicalLeaderTable::new(&hx).expect("small CSS code");
        CssView {
            n,
            hz,
            hx,
            z_generators: zg,
            x_generators: xg,
            logical_x: Vec::new(),
            logical_z: Vec::new(),
            x_decoder,
            z_decoder,
        }
    }

    /// Builds the view, failing for non-CSS codes or logical operators not
    /// in standard form.
    pub fn new(code: &StabilizerCode) -> Result<CssView> {
        if !code.is_css() {
            return Err(Error::Unsupported(alloc::format!(
                "code {} is not CSS",
                code.name()
            )));
        }
        let bad = |what: &str| {
            Error::Unsupported(alloc::format!(
                "code {}: {what} logical operators are not in standard CSS form",
                code.name()
            ))
        };
        let mut view = CssView::split(code);
        for l in code.logical_x() {
            if !l.z_bits().is_zero() {
                return Err(bad("X"));
            }
            view.logical_x.push(l.x_bits().clone());
        }
        for l in code.logical_z() {
            if !l.x_bits().is_zero() {
                return Err(bad("Z"));
            }
            view.logical_z.push(l.z_bits().clone());
        }
        Ok(view)
    }

    pub fn k(&self) -> usize {
        self.logical_x.len()
    }

    /// The X-part correction: flips `x` by the coset leader of its syndrome
    /// and returns which logical `X̄_i` the remainder implements.
    pub fn decode_x_part(&self, x: &BitVec) -> BitVec {
        let r = self.x_decoder.correct(x);
        BitVec::from_bools(&self.logical_z.iter().map(|z| z.dot(&r)).collect::<Vec<_>>())
    }

    /// Like [`decode_x_part`](Self::decode_x_part) for the Z part, returning
    /// the `Z̄_i` components.
    pub fn decode_z_part(&self, z: &BitVec) -> BitVec {
        let r = self.z_decoder.correct(z);
        BitVec::from_bools(&self.logical_x.iter().map(|x| x.dot(&r)).collect::<Vec<_>>())
    }
}
