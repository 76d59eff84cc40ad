use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

use stabkit_core::codes::BundledCode;
use stabkit_core::exrec::*;
use stabkit_core::ft::frame::{FaultCode, FixedFaults};
use stabkit_core::ft::{Basis, CircuitBuilder, FrameSimulator, Gate1};
use stabkit_core::{Error, StabilizerCode};

fn steane() -> StabilizerCode {
    BundledCode::SevenQubit.code()
}

fn protocol(circuit: &stabkit_core::ft::Circuit) -> Protocol {
    build_protocol(
        circuit,
        &steane(),
        GadgetSet::default(),
        ProtocolOptions::default(),
    )
    .unwrap()
}

fn prep_measure() -> Protocol {
    let mut b = CircuitBuilder::new();
    let q = b.add_qubits(1)[0];
    b.prep(q, Basis::Z);
    b.measure(q, Basis::Z);
    protocol(&b.finish())
}

/// prep, H, H, measure on one qubit.
fn chain() -> Protocol {
    let mut b = CircuitBuilder::new();
    let q = b.add_qubits(1)[0];
    b.prep(q, Basis::Z);
    b.gate1(Gate1::H, q);
    b.gate1(Gate1::H, q);
    b.measure(q, Basis::Z);
    protocol(&b.finish())
}

fn faults_in(p: &Protocol, instance: usize, count: usize) -> Vec<(usize, FaultCode)> {
    p.instance_locations(instance)[..count]
        .iter()
        .map(|&l| (l, 1))
        .collect()
}

#[test]
fn prep_then_measure_gives_two_exrecs_sharing_one_ec() {
    let p = prep_measure();
    assert_eq!(p.exrecs.len(), 2);
    let (prep, meas) = (&p.exrecs[0], &p.exrecs[1]);
    assert_eq!(prep.kind, ExRecKind::Prep);
    assert_eq!(meas.kind, ExRecKind::Meas);
    assert!(prep.leading.is_empty());
    assert!(meas.trailing.is_empty());
    assert_eq!(prep.trailing.len(), 1);
    assert_eq!(prep.trailing, meas.leading);
    p.encoded.validate().unwrap();
}

#[test]
fn sample_protocol_marks_one_exrec_per_location() {
    let p = protocol(&sample_circuit());
    let kinds: Vec<ExRecKind> = p.exrecs.iter().map(|e| e.kind).collect();
    use ExRecKind::*;
    assert_eq!(kinds, [Prep, Prep, Gate, Gate, Meas, Meas]);
    let mut covered: Vec<usize> = p.exrecs.iter().map(|e| e.location).collect();
    covered.sort_unstable();
    assert_eq!(covered, (0..p.original.locations.len()).collect::<Vec<_>>());

    let (cnot, h) = (&p.exrecs[2], &p.exrecs[3]);
    assert_eq!(
        cnot.leading,
        [p.exrecs[0].trailing[0], p.exrecs[1].trailing[0]]
    );
    assert_eq!(cnot.trailing.len(), 2);
    assert_eq!(h.leading, [cnot.trailing[0]]);
    assert_eq!(h.trailing.len(), 1);
    assert_eq!(p.exrecs[4].leading, [cnot.trailing[1]]);
    assert_eq!(p.exrecs[5].leading, h.trailing);
    assert!(p
        .exrecs
        .iter()
        .all(|e| e.kind != Prep || e.leading.is_empty()));
    assert!(p
        .exrecs
        .iter()
        .all(|e| e.kind != Meas || e.trailing.is_empty()));
    assert_eq!(p.readouts.len(), 2);
    assert!(p.outputs.is_empty());
    p.encoded.validate().unwrap();
}

#[test]
fn cnot_exrec_location_count_is_stable() {
    let a = cnot_exrec(&steane(), GadgetSet::default()).unwrap();
    let b = cnot_exrec(&steane(), GadgetSet::default()).unwrap();
    assert_eq!(a.num_locations(), 719);
    assert_eq!(a.encoded.locations, b.encoded.locations);
    assert_eq!(a.exrecs.len(), 1);
    assert_eq!(a.exrec_locations(0).len(), 719);
    let e = &a.exrecs[0];
    assert_eq!((e.leading.len(), e.trailing.len()), (2, 2));
    assert_eq!(a.outputs.len(), 2);
}

#[test]
fn missing_gadgets_are_reported() {
    let mut b = CircuitBuilder::new();
    let q = b.add_qubits(1)[0];
    b.prep(q, Basis::Z);
    b.gate1(Gate1::Y, q);
    b.measure(q, Basis::Z);
    let c = b.finish();
    assert!(matches!(
        build_protocol(
            &c,
            &steane(),
            GadgetSet::default(),
            ProtocolOptions::default()
        ),
        Err(Error::Unsupported(_))
    ));
    let five = BundledCode::FiveQubit.code();
    let gadgets = GadgetSet {
        ec: stabkit_core::ft::EcKind::Shor { rounds: 3 },
        prep: stabkit_core::ft::PrepStrategy::ShorProject,
    };
    assert!(matches!(
        build_protocol(
            &sample_circuit(),
            &five,
            gadgets,
            ProtocolOptions::default()
        ),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn no_faults_means_every_exrec_is_good_and_full() {
    let p = protocol(&sample_circuit());
    for s in p.classify_exrecs(&[], 1) {
        assert!(s.good && !s.truncated && s.faults == 0);
    }
}

#[test]
fn bad_gate_gadget_truncates_its_predecessor() {
    let p = chain();
    let h2 = p.exrecs[2].gadget;
    let s = p.classify_exrecs(&faults_in(&p, h2, 2), 1);
    assert!(!s[2].good);
    assert!(s[1].good && s[1].truncated);
    assert!(s[0].good && !s[0].truncated);
    assert!(s[3].good);
}

#[test]
fn split_faults_follow_the_back_to_front_recursion() {
    // One fault in each EC of the first H exRec: that exRec is bad, the
    // second H sees only one and stays good, and the preparation loses its
    // trailing EC.
    let p = chain();
    let (e1, e2) = (p.exrecs[1].leading[0], p.exrecs[1].trailing[0]);
    let mut f = faults_in(&p, e1, 1);
    f.extend(faults_in(&p, e2, 1));
    f.sort_unstable();
    let s = p.classify_exrecs(&f, 1);
    assert_eq!(
        s[3],
        ExRecStatus {
            good: true,
            truncated: false,
            faults: 0
        }
    );
    assert_eq!(
        s[2],
        ExRecStatus {
            good: true,
            truncated: false,
            faults: 1
        }
    );
    assert_eq!(
        s[1],
        ExRecStatus {
            good: false,
            truncated: false,
            faults: 2
        }
    );
    assert_eq!(
        s[0],
        ExRecStatus {
            good: true,
            truncated: true,
            faults: 0
        }
    );

    // Adding a fault to the second gate makes it bad too; it takes the EC
    // it shares with the first, which is then good.
    let h2 = p.exrecs[2].gadget;
    f.extend(faults_in(&p, h2, 1));
    f.sort_unstable();
    let s = p.classify_exrecs(&f, 1);
    assert!(!s[2].good);
    assert!(s[1].good && s[1].truncated && s[1].faults == 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn bad_exrecs_are_disjoint_and_each_hold_more_than_t_faults(
        seed in any::<u64>(),
        count in 0usize..10,
        t in 1usize..3,
    ) {
        let p = protocol(&sample_circuit());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = p.num_locations();
        let mut locs: Vec<usize> = (0..count).map(|_| rng.random_range(0..n)).collect();
        locs.sort_unstable();
        locs.dedup();
        let faults: Vec<(usize, FaultCode)> = locs.iter().map(|&l| (l, 1)).collect();
        let s = p.classify_exrecs(&faults, t);
        let counted = p.counted_locations(&s);
        let bad: Vec<usize> = (0..s.len()).filter(|&e| !s[e].good).collect();
        for &e in &bad {
            let inside = locs.iter().filter(|l| counted[e].binary_search(l).is_ok()).count();
            prop_assert_eq!(inside, s[e].faults);
            prop_assert!(inside > t);
        }
        for (i, &a) in bad.iter().enumerate() {
            for &b in &bad[i + 1..] {
                prop_assert!(counted[a].iter().all(|l| counted[b].binary_search(l).is_err()));
            }
        }
        prop_assert!(locs.len() >= bad.len() * (t + 1));
    }
}

#[test]
fn zero_noise_never_fails() {
    let p = cnot_exrec(&steane(), GadgetSet::default()).unwrap();
    let r = simulate_protocol(&p, &NoiseModel::depolarizing(0.0).unwrap(), 2000, 1).unwrap();
    assert_eq!(r.failures, 0);
    assert_eq!(r.failure_rate, 0.0);
}

#[test]
fn trials_with_only_good_exrecs_never_fail() {
    for p in [
        cnot_exrec(&steane(), GadgetSet::default()).unwrap(),
        protocol(&sample_circuit()),
    ] {
        let noise = NoiseModel::depolarizing(2e-3).unwrap();
        let sim = FrameSimulator::new(&p.encoded);
        let mut good_with_faults = 0;
        let mut bad = 0;
        for trial in 0..3000 {
            let mut rng = trial_rng(5, trial);
            let faults = noise.sample(&p.encoded, &mut rng);
            let all_good = p.classify_exrecs(&faults, 1).iter().all(|s| s.good);
            let failed = p.failed(&sim.run(None, &mut FixedFaults::new(&faults)));
            if all_good {
                assert!(
                    !failed,
                    "trial {trial} failed with only good exRecs: {faults:?}"
                );
                good_with_faults += usize::from(!faults.is_empty());
            } else {
                bad += 1;
            }
        }
        assert!(good_with_faults > 1000);
        assert!(bad > 0);
    }
}

#[test]
fn single_faults_never_break_the_cnot_exrec() {
    let p = cnot_exrec(&steane(), GadgetSet::default()).unwrap();
    assert_eq!(single_fault_failures(&p), (5313, 0));
}

#[test]
fn depolarizing_sampler_matches_its_rates() {
    let p = cnot_exrec(&steane(), GadgetSet::default()).unwrap();
    let c = &p.encoded;
    let rate = 0.05;
    let noise = NoiseModel::depolarizing(rate).unwrap();
    let trials = 4000u64;
    let mut hits = vec![0u64; c.locations.len()];
    let mut one = [0u64; 4];
    let mut two = [0u64; 16];
    for trial in 0..trials {
        for (l, code) in noise.sample(c, &mut trial_rng(9, trial)) {
            hits[l] += 1;
            if c.locations[l].kind.arity() == 2 {
                two[code as usize] += 1;
            } else {
                one[code as usize] += 1;
            }
        }
    }
    let sigma = (trials as f64 * rate * (1.0 - rate)).sqrt();
    let mean = trials as f64 * rate;
    // Per-location counts: the share beyond 3σ matches a normal tail, and
    // none is extreme.
    let outside = hits
        .iter()
        .filter(|&&h| (h as f64 - mean).abs() > 3.0 * sigma)
        .count();
    assert!(outside * 100 <= hits.len(), "{outside} locations beyond 3σ");
    for (l, &h) in hits.iter().enumerate() {
        assert!(
            (h as f64 - mean).abs() < 5.0 * sigma,
            "location {l}: {h} hits, expected {mean} ± {sigma}"
        );
    }
    let total: u64 = hits.iter().sum();
    let all = trials as f64 * c.locations.len() as f64;
    assert!((total as f64 - all * rate).abs() < 3.0 * (all * rate * (1.0 - rate)).sqrt());

    assert_eq!((one[0], two[0]), (0, 0));
    for (counts, k) in [(&one[1..], 3.0), (&two[1..], 15.0)] {
        let n: u64 = counts.iter().sum();
        let expect = n as f64 / k;
        let sd = (n as f64 * (1.0 / k) * (1.0 - 1.0 / k)).sqrt();
        for &x in counts {
            assert!((x as f64 - expect).abs() < 3.0 * sd, "{counts:?}");
        }
    }
}

fn skewed(p: f64) -> NoiseModel {
    NoiseModel::Uncorrelated {
        p,
        relative: KindRates {
            prep: 0.5,
            gate1: 1.0,
            gate2: 2.0,
            measure: 1.5,
            wait: 0.25,
        },
        one_qubit: [1.0, 0.0, 3.0],
        two_qubit: [1.0; 15],
    }
}

#[test]
fn samplers_are_locally_stochastic() {
    let p = prep_measure();
    let c = &p.encoded;
    let lie_low: Adversary = Arc::new(|_, locs: &[usize]| {
        locs.iter()
            .map(|&l| if l % 2 == 0 { 0 } else { 1 })
            .collect()
    });
    let models = [
        NoiseModel::depolarizing(0.1).unwrap(),
        skewed(0.1),
        NoiseModel::Adversarial {
            p: 0.1,
            adversary: lie_low,
        },
    ];
    let trials = 20000u64;
    for noise in &models {
        let draws: Vec<Vec<(usize, FaultCode)>> = (0..trials)
            .map(|t| noise.sample(c, &mut trial_rng(3, t)))
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..100 {
            let size = rng.random_range(1..=3);
            let mut set: Vec<usize> = (0..size)
                .map(|_| rng.random_range(0..c.locations.len()))
                .collect();
            set.sort_unstable();
            set.dedup();
            let bound: f64 = set
                .iter()
                .map(|&l| noise.rate(c.locations[l].kind))
                .product();
            let hits = draws
                .iter()
                .filter(|d| {
                    set.iter()
                        .all(|l| d.binary_search_by_key(l, |f| f.0).is_ok())
                })
                .count() as u64;
            // 300 comparisons: z = 4 keeps the family-wise error near 2%.
            let (lo, _) = wilson_interval(hits, trials, 4.0);
            assert!(lo <= bound, "{noise:?} {set:?}: {hits}/{trials} vs {bound}");
        }
    }
}

#[test]
fn uncorrelated_sampler_follows_weights_and_kind_rates() {
    let p = prep_measure();
    let c = &p.encoded;
    let noise = skewed(0.2);
    let mut one = [0u64; 4];
    let trials = 3000;
    for t in 0..trials {
        for (l, code) in noise.sample(c, &mut trial_rng(4, t)) {
            if c.locations[l].kind.arity() == 1 {
                one[code as usize] += 1;
            }
        }
    }
    assert_eq!(one[2], 0);
    let ratio = one[3] as f64 / one[1] as f64;
    assert!((ratio - 3.0).abs() < 0.3, "{one:?}");
    let wait = c
        .locations
        .iter()
        .find(|l| l.kind == stabkit_core::ft::LocationKind::Wait)
        .unwrap();
    assert!((noise.rate(wait.kind) - 0.05).abs() < 1e-15);
}

#[test]
fn grid_faults_are_nested_across_strengths() {
    let p = prep_measure();
    let noise = NoiseModel::depolarizing(0.1).unwrap();
    for trial in 0..200 {
        let cands = noise.sample_candidates(&p.encoded, 0.1, &mut trial_rng(2, trial));
        let mut prev: Vec<(usize, FaultCode)> = Vec::new();
        for q in [1e-3, 1e-2, 5e-2, 0.1] {
            let f = noise.with_p(q).unwrap().faults_at(&p.encoded, &cands);
            assert!(prev.iter().all(|x| f.contains(x)));
            prev = f;
        }
    }
}

#[test]
fn silent_adversary_causes_no_failures() {
    let p = cnot_exrec(&steane(), GadgetSet::default()).unwrap();
    let silent: Adversary = Arc::new(|_, locs: &[usize]| vec![0; locs.len()]);
    let noise = NoiseModel::Adversarial {
        p: 0.05,
        adversary: silent,
    };
    assert_eq!(simulate_protocol(&p, &noise, 500, 3).unwrap().failures, 0);
}

#[test]
fn monte_carlo_is_seeded_and_split_invariant() {
    let p = prep_measure();
    let noise = NoiseModel::depolarizing(1e-2).unwrap();
    let grid = [1e-3, 1e-2, 3e-2];
    let whole = count_failures(&p, &noise, &grid, 11, 0..3000).unwrap();
    let again = count_failures(&p, &noise, &grid, 11, 0..3000).unwrap();
    assert_eq!(whole, again);
    let mut parts = vec![0u64; 3];
    for r in [0..700, 700..701, 701..3000] {
        for (a, b) in parts
            .iter_mut()
            .zip(count_failures(&p, &noise, &grid, 11, r).unwrap())
        {
            *a += b;
        }
    }
    assert_eq!(parts, whole);
    assert!(whole[2] > 0);
    let single = simulate_protocol(&p, &noise.with_p(3e-2).unwrap(), 3000, 11).unwrap();
    assert_eq!(single.failures, whole[2]);
    let (lo, hi) = single.wilson_95_interval;
    assert!(lo <= single.failure_rate && single.failure_rate <= hi);
}

#[test]
fn measured_failure_rate_respects_the_union_bound() {
    let p = cnot_exrec(&steane(), GadgetSet::default()).unwrap();
    let a = fault_set_bound(&p, 1);
    assert_eq!(a, binomial(719, 2));
    let a = 258_121.0;
    let grid = [1e-4, 3e-4, 1e-3, 3e-3];
    let noise = NoiseModel::depolarizing(3e-3).unwrap();
    let f = count_failures(&p, &noise, &grid, 21, 0..20000).unwrap();
    for (&q, &fails) in grid.iter().zip(&f) {
        let (lo, _) = wilson_interval(fails, 20000, Z_95);
        assert!(lo <= a * q * q, "p={q}: {fails} failures");
    }
}

#[test]
fn malignant_pairs_shard_and_stay_below_the_pair_count() {
    let p = prep_measure();
    let parts: Vec<MalignantReport> = (0..3).map(|s| malignant_pairs(&p, s, 3).unwrap()).collect();
    let merged = parts
        .iter()
        .skip(1)
        .fold(parts[0].clone(), |acc, r| acc.merge(r));
    let n = p.num_locations() as u64;
    assert_eq!(merged.pairs, n * (n - 1) / 2);
    assert!(merged.malignant_pairs > 0);
    assert!(merged.malignant_pairs <= merged.pairs);
    assert!(binomial(n, 2) >= merged.malignant_pairs.into());
    assert!(merged.failing_assignments <= merged.assignments);
    assert!(merged.weighted <= merged.malignant_pairs as f64);
    assert!(matches!(malignant_pairs(&p, 3, 3), Err(Error::Domain(_))));
}

#[test]
fn fault_set_counts() {
    assert_eq!(binomial(10, 2), 45u32.into());
    assert_eq!(binomial(5, 7), 0u32.into());
    assert_eq!(binomial(50, 25).to_string(), "126410606437752");
    let p = prep_measure();
    let e0 = p.exrec_locations(0).len() as u64;
    assert_eq!(count_fault_sets(&p, 0, 1), binomial(e0, 2));
    assert_eq!(count_fault_sets(&p, 0, 2), binomial(e0, 3));
    let t = threshold_from_count(&binomial(10, 2), 1).unwrap();
    assert!((t - 1.0 / 45.0).abs() < 1e-15);
}

#[test]
fn level_reduction_examples() {
    let a = 1000.0;
    let fixed = level_reduction_bound(1e-3, a, 1, 5).unwrap();
    assert!((fixed.threshold - 1e-3).abs() < 1e-18);
    for r in &fixed.rates {
        assert!((r / 1e-3 - 1.0).abs() < 1e-12);
    }
    let half = level_reduction_bound(5e-4, a, 1, 3).unwrap();
    let ratios: Vec<f64> = half.rates.iter().map(|r| r / half.threshold).collect();
    for (r, want) in ratios.iter().zip([0.5, 0.25, 1.0 / 16.0, 1.0 / 256.0]) {
        assert!((r / want - 1.0).abs() < 1e-12, "{ratios:?}");
    }
    let above = level_reduction_bound(2e-3, a, 1, 4).unwrap();
    assert!(above.rates.windows(2).all(|w| w[1] >= w[0]));
    let t2 = level_reduction_bound(0.5e-2, 1e4, 2, 2).unwrap();
    assert!((t2.threshold - 1e-2).abs() < 1e-15);
    assert!((t2.rates[1] / t2.threshold - 0.125).abs() < 1e-12);
}

#[test]
fn levels_needed_examples() {
    assert_eq!(levels_needed(1e-15, 1e-4, 1e-3, 1).unwrap(), 4);
    for t in 1..4 {
        let (p, pt): (f64, f64) = (2e-4, 1e-3);
        let one_level = p * (p / pt).powi(t as i32);
        assert_eq!(levels_needed(one_level, p, pt, t).unwrap(), 1);
    }
    assert_eq!(levels_needed(5e-4, 1e-4, 1e-3, 1).unwrap(), 0);
    assert!(matches!(
        levels_needed(1e-15, 1e-3, 1e-3, 1),
        Err(Error::ThresholdExceeded { .. })
    ));
    assert!(matches!(
        levels_needed(1e-15, 2e-3, 1e-3, 1),
        Err(Error::ThresholdExceeded { .. })
    ));
}

#[test]
fn levels_needed_agrees_with_the_recursion() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let t = rng.random_range(1..=3usize);
        let pt = 10f64.powf(rng.random_range(-5.0..-1.0));
        let p = pt * 10f64.powf(rng.random_range(-3.0..-0.05));
        let eps = p * 10f64.powf(rng.random_range(-15.0..-0.5));
        let l = levels_needed(eps, p, pt, t).unwrap();
        let a = pt.powf(-(t as f64));
        let rates = level_reduction_bound(p, a, t, l as usize).unwrap().rates;
        assert!(
            rates[l as usize] <= eps * (1.0 + 1e-9),
            "t={t} pt={pt} p={p} eps={eps} L={l}"
        );
        if l > 0 {
            assert!(rates[l as usize - 1] > eps * (1.0 - 1e-9));
        }
    }
}

#[test]
fn overhead_examples() {
    assert_eq!(overhead_bound(10, 0), 1u32.into());
    assert_eq!(overhead_bound(10, 3), 1000u32.into());
    assert_eq!(overhead_bound(100, 2), 10000u32.into());
    assert_eq!(overhead_bound(575, 4).to_string(), "109312890625");
}

#[test]
fn wilson_interval_values() {
    let z2 = Z_95 * Z_95;
    let (lo, hi) = wilson_interval(0, 10, Z_95);
    assert_eq!(lo, 0.0);
    assert!((hi - z2 / (10.0 + z2)).abs() < 1e-15);
    let (lo, hi) = wilson_interval(50, 100, Z_95);
    assert!((lo + hi - 1.0).abs() < 1e-15);
    assert!((hi - 0.596_168_469_634_004_4).abs() < 1e-12, "{hi}");
    let r = MonteCarloReport::new(1e-3, 1000, 7, 0);
    assert!(r.wilson_95_interval.0 < 0.007 && 0.007 < r.wilson_95_interval.1);
    assert_eq!(wilson_interval(0, 0, Z_95), (0.0, 1.0));
}

#[test]
fn log_grid_spacing() {
    let g = log_grid(1e-5, 1e-1, 20).unwrap();
    assert_eq!(g.len(), 20);
    assert_eq!((g[0], g[19]), (1e-5, 1e-1));
    let step = g[1] / g[0];
    for w in g.windows(2) {
        assert!((w[1] / w[0] / step - 1.0).abs() < 1e-12);
    }
    assert!((step - 10f64.powf(4.0 / 19.0)).abs() < 1e-12);
    assert!(log_grid(0.0, 1.0, 3).is_err());
}

fn exact(c: f64) -> impl Fn(f64) -> MonteCarloReport {
    move |p| {
        let trials = 1u64 << 40;
        let rate = (c * p * p).min(1.0);
        MonteCarloReport::new(p, trials, (rate * trials as f64).round() as u64, 0)
    }
}

#[test]
fn quadratic_fit_recovers_the_coefficient() {
    let reports: Vec<MonteCarloReport> = log_grid(1e-5, 1e-1, 20)
        .unwrap()
        .into_iter()
        .map(exact(2.5e4))
        .collect();
    let fit = fit_quadratic(&reports, 1e-3).unwrap();
    assert!((fit.coefficient / 2.5e4 - 1.0).abs() < 1e-6);
    assert!(fit.r_squared > 1.0 - 1e-9);
    assert!((fit.free_slope - 2.0).abs() < 1e-6);
    assert_eq!(fit.points, 10);
    assert!(fit_quadratic(&reports[..1], 1e-3).is_err());
}

#[test]
fn pseudo_threshold_brackets_the_crossing() {
    let est = exact(1.3e4);
    let r = pseudo_threshold(|p| Ok(est(p)), 1e-5, 1e-1, 30).unwrap();
    assert!(r.conclusive);
    let crossing = 1.0 / 1.3e4;
    assert!(r.lower <= crossing && crossing <= r.upper, "{r:?}");
    assert!(
        r.upper / r.lower < 1.01,
        "{:?}",
        (r.lower, r.upper, r.evaluations.len())
    );

    let flat = |p: f64| {
        Ok(MonteCarloReport::new(
            p,
            1 << 30,
            ((p / 2.0) * (1u64 << 30) as f64) as u64,
            0,
        ))
    };
    let r = pseudo_threshold(flat, 1e-5, 1e-1, 30).unwrap();
    assert!(!r.conclusive);
    assert_eq!((r.lower, r.upper), (1e-5, 1e-1));
}
