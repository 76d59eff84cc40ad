use alloc::vec::Vec;

use rand::Rng;

use super::{conjugate_unchecked, CliffordGate};
use crate::bits::{BitMatrix, BitVec};
use crate::error::{check_len, Error, Result};
use crate::pauli::{PauliKind, PauliOperator};

/// Stabilizer state on `n` qubits held as `n` stabilizer rows and `n`
/// destabilizer rows. Row phases are `0` or `2` (a sign).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    stabilizers: Vec<PauliOperator>,
    destabilizers: Vec<PauliOperator>,
}

/// Result of a Pauli measurement: `negative` is the `-1` eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasurementOutcome {
    pub negative: bool,
    pub deterministic: bool,
}

impl Tableau {
    /// `|0…0⟩`: stabilizers `Z_i`, destabilizers `X_i`.
    pub fn new(n: usize) -> Self {
        let single = |q, k| PauliOperator::single(n, q, k).expect("index in range");
        Tableau {
            n,
            stabilizers: (0..n).map(|q| single(q, PauliKind::Z)).collect(),
            destabilizers: (0..n).map(|q| single(q, PauliKind::X)).collect(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliOperator] {
        &self.stabilizers
    }

    pub fn destabilizers(&self) -> &[PauliOperator] {
        &self.destabilizers
    }

    pub fn apply_gate(&mut self, gate: &CliffordGate) -> Result<()> {
        gate.check(self.n)?;
        self.apply_gate_unchecked(gate);
        #[cfg(debug_assertions)]
        if self.n <= 16 {
            debug_assert!(self.is_consistent(), "tableau invariant broken by {gate}");
        }
        Ok(())
    }

    pub(crate) fn apply_gate_unchecked(&mut self, gate: &CliffordGate) {
        if let CliffordGate::Pauli(p) = gate {
            // destabilizer signs carry no meaning, so only stabilizers change
            for row in &mut self.stabilizers {
                if row.anticommutes_unchecked(p) {
                    row.set_phase(row.phase() ^ 2);
                }
            }
            return;
        }
        for row in self
            .stabilizers
            .iter_mut()
            .chain(self.destabilizers.iter_mut())
        {
            conjugate_unchecked(row, gate);
        }
    }

    pub fn apply_all(&mut self, gates: &[CliffordGate]) -> Result<()> {
        for g in gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Commutation relations hold and the `2n × 2n` matrix is symplectic.
    pub fn is_consistent(&self) -> bool {
        let n = self.n;
        for i in 0..n {
            if self.stabilizers[i].phase() & 1 == 1 {
                return false;
            }
            for j in 0..n {
                let ss = self.stabilizers[i].anticommutes_unchecked(&self.stabilizers[j]);
                let dd = self.destabilizers[i].anticommutes_unchecked(&self.destabilizers[j]);
                let ds = self.destabilizers[i].anticommutes_unchecked(&self.stabilizers[j]);
                if ss || dd || ds != (i == j) {
                    return false;
                }
            }
        }
        true
    }

    /// The `2n × 2n` binary matrix, destabilizer rows first, `(x|z)` columns.
    pub fn binary_matrix(&self) -> BitMatrix {
        let rows = self
            .destabilizers
            .iter()
            .chain(&self.stabilizers)
            .map(|p| p.to_symplectic())
            .collect();
        BitMatrix::from_rows(2 * self.n, rows).expect("row length")
    }

    /// Index of the first stabilizer row anticommuting with `m`, if any.
    fn first_anticommuting(&self, m: &PauliOperator) -> Option<usize> {
        self.stabilizers
            .iter()
            .position(|s| s.anticommutes_unchecked(m))
    }

    /// Outcome of measuring `m` when it is determined by the state: `Some`
    /// with `true` for `-1`, `None` when the outcome is random.
    pub fn peek(&self, m: &PauliOperator) -> Result<Option<bool>> {
        self.check_measurable(m)?;
        if self.first_anticommuting(m).is_some() {
            return Ok(None);
        }
        let mut acc = PauliOperator::identity(self.n);
        for i in 0..self.n {
            if self.destabilizers[i].anticommutes_unchecked(m) {
                acc.mul_assign_unchecked(&self.stabilizers[i]);
            }
        }
        debug_assert!(acc.eq_up_to_phase(m));
        Ok(Some(acc.phase() != m.phase()))
    }

    fn check_measurable(&self, m: &PauliOperator) -> Result<()> {
        check_len(self.n, m.num_qubits())?;
        if !m.is_hermitian() {
            return Err(Error::Domain(alloc::format!("{m} is not Hermitian")));
        }
        Ok(())
    }

    /// Measures a Hermitian Pauli (sign included). Random outcomes are fair
    /// coin flips drawn from `rng`.
    pub fn measure_pauli<R: Rng + ?Sized>(
        &mut self,
        m: &PauliOperator,
        rng: &mut R,
    ) -> Result<MeasurementOutcome> {
        self.measure_with(m, || rng.random::<bool>())
    }

    /// Measures `m`, calling `choose` for the result only when it is random.
    pub fn measure_with(
        &mut self,
        m: &PauliOperator,
        choose: impl FnOnce() -> bool,
    ) -> Result<MeasurementOutcome> {
        self.check_measurable(m)?;
        let Some(p) = self.first_anticommuting(m) else {
            let negative = self.peek(m)?.expect("deterministic");
            return Ok(MeasurementOutcome {
                negative,
                deterministic: true,
            });
        };
        let pivot = self.stabilizers[p].clone();
        for i in 0..self.n {
            if i != p && self.stabilizers[i].anticommutes_unchecked(m) {
                self.stabilizers[i].mul_assign_unchecked(&pivot);
            }
            if self.destabilizers[i].anticommutes_unchecked(m) {
                self.destabilizers[i].mul_assign_unchecked(&pivot);
            }
        }
        let negative = choose();
        self.destabilizers[p] = pivot;
        let mut row = m.clone();
        if negative {
            row.set_phase(row.phase() ^ 2);
        }
        self.stabilizers[p] = row;
        self.normalize_destabilizer_phases();
        Ok(MeasurementOutcome {
            negative,
            deterministic: false,
        })
    }

    fn normalize_destabilizer_phases(&mut self) {
        for d in &mut self.destabilizers {
            d.set_phase(0);
        }
    }

    /// The stabilizer state fixed by a commuting, independent list of
    /// Hermitian Paulis, reached by projecting `|0…0⟩` and fixing signs.
    /// Qubits not pinned by `ops` keep whatever `|0⟩` stabilizers survive.
    pub fn from_stabilizers(n: usize, ops: &[PauliOperator]) -> Result<Self> {
        let mut t = Tableau::new(n);
        for (i, op) in ops.iter().enumerate() {
            if !t.measure_with(op, || false)?.negative {
                continue;
            }
            // flip the sign with a Pauli anticommuting with `op` only
            let mut rows = BitMatrix::zeros(0, 2 * n);
            for q in &ops[..=i] {
                rows.push_row(q.z_bits().concat(q.x_bits()))?;
            }
            let mut rhs = BitVec::zeros(i + 1);
            rhs.set(i, true);
            let fix = rows.solve(&rhs).ok_or_else(|| {
                Error::Domain(alloc::format!("{op} depends on the earlier operators"))
            })?;
            t.apply_gate_unchecked(&CliffordGate::Pauli(PauliOperator::from_symplectic(&fix)?));
        }
        Ok(t)
    }

    /// Resets qubit `q` to `|0⟩` (or `|+⟩`), returning the discarded
    /// measurement outcome.
    pub fn reset<R: Rng + ?Sized>(&mut self, q: usize, plus: bool, rng: &mut R) -> Result<bool> {
        let kind = if plus { PauliKind::X } else { PauliKind::Z };
        let flip = if plus { PauliKind::Z } else { PauliKind::X };
        let m = PauliOperator::single(self.n, q, kind)?;
        let outcome = self.measure_pauli(&m, rng)?;
        if outcome.negative {
            self.apply_gate_unchecked(&CliffordGate::Pauli(PauliOperator::single(
                self.n, q, flip,
            )?));
        }
        Ok(outcome.negative)
    }

    /// Stabilizer rows as signed Paulis, reduced to a canonical echelon
    /// form so equal states compare equal.
    pub fn canonical_stabilizers(&self) -> Vec<PauliOperator> {
        let mut rows = self.stabilizers.clone();
        let n = self.n;
        let mut r = 0;
        for pass in 0..2 {
            for q in 0..n {
                let has = |p: &PauliOperator| {
                    let (x, z) = p.get(q).bits();
                    if pass == 0 {
                        x
                    } else {
                        z
                    }
                };
                let Some(pivot) = (r..n).find(|&i| has(&rows[i])) else {
                    continue;
                };
                rows.swap(r, pivot);
                let pr = rows[r].clone();
                for i in 0..n {
                    if i != r && has(&rows[i]) {
                        rows[i].mul_assign_unchecked(&pr);
                    }
                }
                r += 1;
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn pauli(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn hadamard_turns_z_into_x() {
        let mut t = Tableau::new(1);
        t.apply_gate(&CliffordGate::H(0)).unwrap();
        assert_eq!(t.stabilizers()[0], pauli("X"));
    }

    #[test]
    fn bell_pair_is_deterministic() {
        let mut t = Tableau::new(2);
        t.apply_all(&[CliffordGate::H(0), CliffordGate::Cnot(0, 1)])
            .unwrap();
        assert_eq!(t.peek(&pauli("XX")).unwrap(), Some(false));
        assert_eq!(t.peek(&pauli("ZZ")).unwrap(), Some(false));
        assert_eq!(t.peek(&pauli("-YY")).unwrap(), Some(false));
        assert_eq!(t.peek(&pauli("ZI")).unwrap(), None);
    }

    #[test]
    fn second_measurement_repeats_the_first() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut t = Tableau::new(3);
        t.apply_all(&[
            CliffordGate::H(0),
            CliffordGate::Cnot(0, 1),
            CliffordGate::H(2),
        ])
        .unwrap();
        let first = t.measure_pauli(&pauli("ZZZ"), &mut rng).unwrap();
        assert!(!first.deterministic);
        let again = t.measure_pauli(&pauli("ZZZ"), &mut rng).unwrap();
        assert!(again.deterministic);
        assert_eq!(first.negative, again.negative);
        assert!(t.is_consistent());
    }

    #[test]
    fn reset_pins_the_qubit() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut t = Tableau::new(2);
        t.apply_all(&[CliffordGate::H(0), CliffordGate::Cnot(0, 1)])
            .unwrap();
        t.reset(1, true, &mut rng).unwrap();
        assert_eq!(t.peek(&pauli("IX")).unwrap(), Some(false));
    }
}
