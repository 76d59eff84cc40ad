use std::time::Instant;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stabkit_core::bits::{BitMatrix, BitVec};
use stabkit_core::clifford::{
    apply_dense_gate, clifford_vs_dense_check, conjugate, dense_run, is_symplectic,
    random_clifford_circuit, symplectic_of, CliffordGate, Instruction, SimCircuit, Tableau,
};
use stabkit_core::codes::BundledCode;
use stabkit_core::dense::{c, cis, gates, DenseState, Matrix2};
use stabkit_core::pauli::all_paulis;
use stabkit_core::PauliOperator;

fn pauli(s: &str) -> PauliOperator {
    s.parse().unwrap()
}

fn all_gate_kinds() -> Vec<CliffordGate> {
    use CliffordGate::*;
    vec![
        H(0),
        H(1),
        P(0),
        P(1),
        Pdg(1),
        X(0),
        Y(1),
        Z(0),
        Cnot(0, 1),
        Cnot(1, 0),
        Cz(0, 1),
        Cy(0, 1),
        Cy(1, 0),
        Pauli(pauli("XY")),
    ]
}

#[test]
fn textbook_conjugations() {
    assert_eq!(
        conjugate(&pauli("X"), &CliffordGate::H(0)).unwrap(),
        pauli("Z")
    );
    assert_eq!(
        conjugate(&pauli("Z"), &CliffordGate::H(0)).unwrap(),
        pauli("X")
    );
    assert_eq!(
        conjugate(&pauli("Y"), &CliffordGate::H(0)).unwrap(),
        pauli("-Y")
    );
    assert_eq!(
        conjugate(&pauli("X"), &CliffordGate::P(0)).unwrap(),
        pauli("Y")
    );
    assert_eq!(
        conjugate(&pauli("XI"), &CliffordGate::Cnot(0, 1)).unwrap(),
        pauli("XX")
    );
    assert_eq!(
        conjugate(&pauli("IZ"), &CliffordGate::Cnot(0, 1)).unwrap(),
        pauli("ZZ")
    );
    assert!(conjugate(&pauli("II"), &CliffordGate::Cnot(0, 0)).is_err());
    assert!(conjugate(&pauli("II"), &CliffordGate::H(2)).is_err());
}

/// `U P U†` from the tableau rules must equal the dense conjugation on a
/// generic state, phase included.
#[test]
fn conjugation_matches_dense_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let amps = (0..4)
        .map(|_| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let mut psi = DenseState::from_amplitudes(amps).unwrap();
    psi.normalize();
    for g in all_gate_kinds() {
        for p in all_paulis(2) {
            let image = conjugate(&p, &g).unwrap();
            // U P U† |ψ⟩ with U† realized by the inverse gate
            let mut lhs = psi.clone();
            apply_dense_gate(&mut lhs, &g.inverse()).unwrap();
            lhs.apply_pauli(&p).unwrap();
            apply_dense_gate(&mut lhs, &g).unwrap();
            let mut rhs = psi.clone();
            rhs.apply_pauli(&image).unwrap();
            let diff: f64 = lhs
                .amplitudes()
                .iter()
                .zip(rhs.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-12, "{g}: {p} -> {image}");
        }
    }
}

#[test]
fn hadamard_on_zero_gives_x_stabilizer() {
    let mut t = Tableau::new(1);
    t.apply_gate(&CliffordGate::H(0)).unwrap();
    assert_eq!(t.stabilizers(), &[pauli("X")]);
}

#[test]
fn z_on_plus_is_a_fair_coin() {
    let mut minus = 0;
    for seed in 0..400 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut t = Tableau::new(1);
        t.apply_gate(&CliffordGate::H(0)).unwrap();
        let o = t.measure_pauli(&pauli("Z"), &mut rng).unwrap();
        assert!(!o.deterministic);
        let expected = if o.negative { pauli("-Z") } else { pauli("Z") };
        assert_eq!(t.stabilizers(), &[expected]);
        minus += o.negative as usize;
    }
    // 400 fair flips: 5 sigma is 50
    assert!((150..=250).contains(&minus), "{minus}");
}

#[test]
fn nine_qubit_codeword_has_definite_zz() {
    let code = BundledCode::NineQubit.code();
    let mut ops = code.generators().to_vec();
    ops.push(code.logical_z()[0].clone());
    let mut t = Tableau::from_stabilizers(9, &ops).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let o = t.measure_pauli(&pauli("ZZIIIIIII"), &mut rng).unwrap();
    assert!(o.deterministic && !o.negative);
}

#[test]
fn measured_generators_read_the_syndrome() {
    let code = BundledCode::FiveQubit.code();
    let mut ops = code.generators().to_vec();
    ops.push(code.logical_z()[0].clone());
    let mut t = Tableau::from_stabilizers(5, &ops).unwrap();
    t.apply_gate(&CliffordGate::X(0)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let bits: Vec<bool> = code
        .generators()
        .iter()
        .map(|g| {
            let o = t.measure_pauli(g, &mut rng).unwrap();
            assert!(o.deterministic);
            o.negative
        })
        .collect();
    assert_eq!(bits, vec![false, false, false, true]);
    assert_eq!(
        BitVec::from_bools(&bits),
        code.syndrome(&pauli("XIIII")).unwrap()
    );
}

/// Per-gate matrices written from the column rules, independent of the
/// conjugation code: `v ↦ v M` on `(x|z)` row vectors.
fn oracle_gate_matrix(g: &CliffordGate, n: usize) -> BitMatrix {
    let mut m = BitMatrix::identity(2 * n);
    let (x, z) = (|q: usize| q, |q: usize| n + q);
    // column operation "col_dst += col_src" on M = I
    let add_col = |m: &mut BitMatrix, dst: usize, src: usize| {
        for r in 0..2 * n {
            let v = m.get(r, dst) ^ m.get(r, src);
            m.set(r, dst, v);
        }
    };
    match *g {
        CliffordGate::H(q) => {
            m.set(x(q), x(q), false);
            m.set(z(q), z(q), false);
            m.set(x(q), z(q), true);
            m.set(z(q), x(q), true);
        }
        CliffordGate::P(q) | CliffordGate::Pdg(q) => add_col(&mut m, z(q), x(q)),
        CliffordGate::Cnot(a, b) => {
            add_col(&mut m, x(b), x(a));
            add_col(&mut m, z(a), z(b));
        }
        CliffordGate::Cz(a, b) => {
            add_col(&mut m, z(b), x(a));
            add_col(&mut m, z(a), x(b));
        }
        _ => {}
    }
    m
}

#[test]
fn symplectic_matrices_compose() {
    assert_eq!(symplectic_of(&[], 4).unwrap(), BitMatrix::identity(8));
    assert_eq!(
        symplectic_of(&[CliffordGate::H(0)], 1).unwrap(),
        BitMatrix::parse("01\n10").unwrap()
    );
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let n = 6;
        let gates: Vec<CliffordGate> = (0..20)
            .map(|_| {
                let a = rng.random_range(0..n);
                let b = (a + rng.random_range(1..n)) % n;
                match rng.random_range(0..5) {
                    0 => CliffordGate::H(a),
                    1 => CliffordGate::P(a),
                    2 => CliffordGate::Pdg(a),
                    3 => CliffordGate::Cnot(a, b),
                    _ => CliffordGate::Cz(a, b),
                }
            })
            .collect();
        let m = symplectic_of(&gates, n).unwrap();
        assert!(is_symplectic(&m));
        let oracle = gates.iter().fold(BitMatrix::identity(2 * n), |acc, g| {
            acc.mul(&oracle_gate_matrix(g, n)).unwrap()
        });
        assert_eq!(m, oracle);
        // conjugating a Pauli agrees with v M
        let p = PauliOperator::from_symplectic(&BitVec::from_u64(12, rng.random::<u64>() & 0xfff))
            .unwrap();
        let image = gates
            .iter()
            .fold(p.clone(), |q, g| conjugate(&q, g).unwrap());
        let row = BitMatrix::from_rows(12, vec![p.to_symplectic()])
            .unwrap()
            .mul(&m)
            .unwrap();
        assert_eq!(row.row(0), &image.to_symplectic());
    }
}

#[test]
fn random_circuits_agree_with_dense_engine() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut deterministic = 0;
    let mut random = 0;
    for i in 0..100u64 {
        let n = rng.random_range(2..=8);
        let circuit = random_clifford_circuit(n, 50, 3, &mut rng);
        let report = clifford_vs_dense_check(&circuit, 16, &[i, i + 1000]).unwrap();
        assert!(
            report.passed(),
            "circuit {i}: {report:?}\n{}",
            circuit.to_text()
        );
        deterministic += report.deterministic;
        random += report.random;
    }
    assert!(deterministic > 0 && random > 0);
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn identity_and_bell_circuits() {
    let mut id = SimCircuit::new(3);
    for q in 0..3 {
        let mut z = PauliOperator::identity(3);
        z.set(q, stabkit_core::PauliKind::Z);
        id.push(Instruction::Measure(z)).unwrap();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (_, outcomes) = id.run_tableau(&mut rng).unwrap();
    assert!(outcomes.iter().all(|o| o.deterministic && !o.negative));

    let bell = SimCircuit::parse("H 0\nCNOT 0 1\nMEAS XX\nMEAS ZZ\n").unwrap();
    assert_eq!(bell.n, 2);
    let (_, outcomes) = bell.run_tableau(&mut rng).unwrap();
    assert!(outcomes.iter().all(|o| o.deterministic && !o.negative));
    let (_, dense) = dense_run(&bell, 16, &mut rng).unwrap();
    assert_eq!(dense, vec![false, false]);
    assert!(clifford_vs_dense_check(&bell, 16, &[0, 1, 2])
        .unwrap()
        .passed());
}

fn close(a: &Matrix2, b: &Matrix2) -> bool {
    gates::distance(a, b) < 1e-12
}

#[test]
fn dense_gate_identities() {
    let t = gates::t();
    let lhs = gates::mul(&gates::mul(&t, &gates::x()), &gates::adjoint(&t));
    let rhs = gates::scale(
        &gates::mul(&gates::x(), &gates::pdg()),
        cis(std::f64::consts::FRAC_PI_4),
    );
    assert!(close(&lhs, &rhs));
    assert!(close(
        &gates::mul(&gates::h(), &gates::h()),
        &gates::identity()
    ));
    for theta in [0.3, 1.0, 2.5] {
        let expected = [
            [
                c((theta / 2.0f64).cos(), -(theta / 2.0f64).sin()),
                c(0.0, 0.0),
            ],
            [
                c(0.0, 0.0),
                c((theta / 2.0f64).cos(), (theta / 2.0f64).sin()),
            ],
        ];
        assert!(close(&gates::rz(theta), &expected));
    }
}

#[test]
fn dense_run_handles_t_gates() {
    let c = SimCircuit::parse("QUBITS 1\nH 0\nT 0\nT 0\n").unwrap();
    assert!(!c.is_clifford());
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    assert!(c.run_tableau(&mut rng).is_err());
    let (state, _) = dense_run(&c, 16, &mut rng).unwrap();
    // T² = P, so the result is |+i⟩
    let mut expected = DenseState::zero(1, 16).unwrap();
    expected.apply_1q(0, &gates::h()).unwrap();
    expected.apply_1q(0, &gates::p()).unwrap();
    assert!(state.fidelity(&expected) > 1.0 - 1e-12);
}

#[test]
fn circuit_text_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut c = random_clifford_circuit(5, 40, 4, &mut rng);
    c.push(Instruction::Prep(
        2,
        stabkit_core::clifford::PrepState::Plus,
    ))
    .unwrap();
    c.push(Instruction::Wait(1)).unwrap();
    c.push(Instruction::T(0)).unwrap();
    let text = c.to_text();
    let back = SimCircuit::parse(&text).unwrap();
    assert_eq!(back, c);
    assert_eq!(back.to_text(), text);
    assert!(SimCircuit::parse("FOO 1").is_err());
    assert!(SimCircuit::parse("QUBITS 2\nCNOT 0 2").is_err());
}

#[test]
fn resets_match_dense_engine() {
    let c = SimCircuit::parse(
        "QUBITS 3\nH 0\nCNOT 0 1\nPREP 1 +\nCNOT 1 2\nPREP 0 0\nMEAS ZIZ\nMEAS IXX\n",
    )
    .unwrap();
    assert!(
        clifford_vs_dense_check(&c, 16, &(0..20).collect::<Vec<_>>())
            .unwrap()
            .passed()
    );
}

#[test]
fn large_random_circuit_is_fast() {
    let n = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let gates: Vec<CliffordGate> = (0..100_000)
        .map(|_| {
            let a = rng.random_range(0..n);
            let b = (a + rng.random_range(1..n)) % n;
            match rng.random_range(0..3) {
                0 => CliffordGate::H(a),
                1 => CliffordGate::P(a),
                _ => CliffordGate::Cnot(a, b),
            }
        })
        .collect();
    let start = Instant::now();
    let mut t = Tableau::new(n);
    t.apply_all(&gates).unwrap();
    let mut measured = 0;
    for q in 0..20 {
        let mut z = PauliOperator::identity(n);
        z.set(q, stabkit_core::PauliKind::Z);
        measured += t.measure_pauli(&z, &mut rng).unwrap().negative as usize;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "{elapsed:?}");
    assert!(t.is_consistent());
    assert!(measured <= 20);
}

fn arb_circuit() -> impl Strategy<Value = (SimCircuit, u64)> {
    (2usize..7, 0usize..40, any::<u64>()).prop_map(|(n, g, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (random_clifford_circuit(n, g, 2, &mut rng), seed)
    })
}

proptest! {
    #[test]
    fn tableau_stays_symplectic((circuit, seed) in arb_circuit()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (t, _) = circuit.run_tableau(&mut rng).unwrap();
        prop_assert!(t.is_consistent());
        prop_assert!(is_symplectic(&t.binary_matrix()));
    }

    #[test]
    fn repeated_measurement_is_deterministic((circuit, seed) in arb_circuit(), pick in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (mut t, _) = circuit.run_tableau(&mut rng).unwrap();
        let n = circuit.n;
        let mut prng = ChaCha8Rng::seed_from_u64(pick);
        let m = loop {
            let v = BitVec::from_u64(2 * n, prng.random::<u64>() & ((1 << (2 * n)) - 1));
            let p = PauliOperator::from_symplectic(&v).unwrap();
            if !p.is_identity() { break p.with_phase(0) }
        };
        let first = t.measure_pauli(&m, &mut rng).unwrap();
        let second = t.measure_pauli(&m, &mut rng).unwrap();
        prop_assert!(second.deterministic);
        prop_assert_eq!(first.negative, second.negative);
    }

    #[test]
    fn conjugation_is_a_homomorphism((circuit, _) in arb_circuit()) {
        let gates: Vec<CliffordGate> = circuit.instructions.iter().filter_map(|i| match i {
            Instruction::Gate(g) => Some(g.clone()),
            _ => None,
        }).collect();
        let n = circuit.n;
        let split = gates.len() / 2;
        let whole = symplectic_of(&gates, n).unwrap();
        let parts = symplectic_of(&gates[..split], n).unwrap().mul(&symplectic_of(&gates[split..], n).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }
}
