//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails if any criterion fails.
//!
//! Pinned tolerances:
//! - dense amplitudes and Knill-Laflamme entries: 1e-10
//! - teleportation fidelity and branch probability: 1e-9
//! - quadratic fit: R² ≥ 0.98 over p ≤ 1e-3, coefficient within a factor 3
//!   of the malignant-pair weight
//! - Monte Carlo intervals: 95% Wilson

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use stabkit::commands::{build_exrec, sweep};
use stabkit::emit::parse_threshold_csv;
use stabkit_core::clifford::{clifford_vs_dense_check, random_clifford_circuit, CrossCheckReport};
use stabkit_core::codes::{
    hamming_bound, singleton_bound, verify_knill_laflamme, BundledCode, KL_TOLERANCE,
};
use stabkit_core::exrec::{
    cnot_exrec, fit_quadratic, level_reduction_bound, levels_needed, pseudo_threshold,
    single_fault_failures, GadgetSet, MonteCarloReport, NoiseModel,
};
use stabkit_core::ft::pi8_teleport_check;
use stabkit_core::pauli::paulis_of_weight;

const SEED: u64 = 20_240_501;
const TRIALS: u64 = 1_000_000;
const GRID: &str = "1e-5:1e-1:log20";
const FIT_MAX_P: f64 = 1e-3;
const MIN_R_SQUARED: f64 = 0.98;
const FIT_FACTOR: f64 = 3.0;
const TELEPORT_TOLERANCE: f64 = 1e-9;
const BISECTION_STEPS: usize = 8;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

struct Cli {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> Cli {
    let mut argv = vec!["stabkit"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = stabkit::run(argv, &mut out, &mut err);
    Cli {
        code,
        stdout: String::from_utf8(out).expect("utf-8 output"),
        stderr: String::from_utf8(err).expect("utf-8 output"),
    }
}

fn json(c: &Cli) -> Value {
    serde_json::from_str(&c.stdout).unwrap_or(Value::Null)
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn code_parameters() -> Verdict {
    let mut pass = true;
    let mut notes = Vec::new();
    for (name, want) in [
        ("five_qubit", "[[5,1,3]]"),
        ("seven_qubit", "[[7,1,3]]"),
        ("nine_qubit", "[[9,1,3]]"),
    ] {
        let start = Instant::now();
        let d = cli(&["code", "distance", "--code", name]);
        let p = cli(&["code", "params", "--code", name]);
        let took = start.elapsed();
        let ok = d.stdout == "3\n" && p.stdout.trim() == want && took < Duration::from_secs(1);
        pass &= ok;
        notes.push(format!("{name} {} in {}", p.stdout.trim(), secs(took)));
    }
    verdict(pass, notes.join(", "))
}

fn knill_laflamme() -> Verdict {
    let start = Instant::now();
    let check = |c: BundledCode| {
        let code = c.code();
        let errors: Vec<_> = paulis_of_weight(code.n(), 0)
            .chain(paulis_of_weight(code.n(), 1))
            .collect();
        verify_knill_laflamme(&code, &errors, 16).expect("dense check runs")
    };
    let five = check(BundledCode::FiveQubit);
    let nine = check(BundledCode::NineQubit);
    let took = start.elapsed();
    let pass = five.is_code
        && !five.is_degenerate
        && nine.is_code
        && nine.is_degenerate
        && five.max_violation <= KL_TOLERANCE
        && nine.max_violation <= KL_TOLERANCE
        && took < Duration::from_secs(10);
    verdict(
        pass,
        format!(
            "five_qubit nondegenerate={} (max dev {:.1e}), nine_qubit degenerate={} (max dev {:.1e}), {}",
            !five.is_degenerate,
            five.max_violation,
            nine.is_degenerate,
            nine.max_violation,
            secs(took)
        ),
    )
}

fn bounds_table() -> Verdict {
    let h = hamming_bound(5, 1, 1).unwrap();
    let s = singleton_bound(4, 1, 3).unwrap();
    let table = cli(&["code", "bounds"]);
    let rows_ok = table.stdout.lines().any(|l| l == "5,1,3,tight,fails,tight")
        && table
            .stdout
            .lines()
            .any(|l| l.starts_with("4,1,3,") && l.ends_with(",fails"));
    let pass = h.holds && h.is_tight() && !s.holds && rows_ok;
    verdict(
        pass,
        format!(
            "hamming(5,1,1): {} = {}; singleton(4,1,3): {} > {}",
            h.lhs, h.rhs, s.lhs, s.rhs
        ),
    )
}

fn clifford_oracle() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut total = CrossCheckReport::default();
    for i in 0..100u64 {
        let n = rng.random_range(2..=8);
        let gates = rng.random_range(1..=50);
        let meas = rng.random_range(0..=3);
        let c = random_clifford_circuit(n, gates, meas, &mut rng);
        let r = clifford_vs_dense_check(&c, 16, &[i, i + 100, i + 200]).expect("cross-check runs");
        total.merge(&r);
    }
    let took = start.elapsed();
    verdict(
        total.passed() && took < Duration::from_secs(60),
        format!(
            "{} runs, {} deterministic outcomes ({} mismatches), {} random ({} stabilizer mismatches), {}",
            total.runs,
            total.deterministic,
            total.deterministic_mismatches,
            total.random,
            total.stabilizer_mismatches,
            secs(took)
        ),
    )
}

fn gadget_properties(support: &mut Option<Verdict>) -> Verdict {
    let start = Instant::now();
    let mut pass = true;
    let mut cases = 0u64;
    let mut notes = Vec::new();
    let mut run = |gadget: &str, prop: &str, prep: &str| {
        let c = cli(&[
            "ft",
            "check",
            "--code",
            "steane7",
            "--gadget",
            gadget,
            "--prep",
            prep,
            "--property",
            prop,
            "--t",
            "1",
            "--jobs",
            "8",
        ]);
        let v = json(&c);
        let ok = c.code == 0
            && v["passed"] == true
            && v["failures"] == 0
            && v["counterexample"].is_null();
        if !ok {
            notes.push(format!(
                "{gadget}/{prop}/{prep} failed: {}",
                c.stderr.trim()
            ));
        }
        pass &= ok;
        cases += v["cases"].as_u64().unwrap_or(0);
    };
    run("steane-ec", "eca", "verify");
    run("steane-ec", "ecb", "verify");
    run("cnot", "gatea", "verify");
    run("cnot", "gateb", "verify");
    for basis in ["prep-z", "prep-x"] {
        for prep in ["verify", "project"] {
            run(basis, "prepa", prep);
            run(basis, "prepb", prep);
        }
    }
    let sc = cli(&[
        "ft",
        "check",
        "--code",
        "steane7",
        "--gadget",
        "steane-ec",
        "--property",
        "support",
        "--jobs",
        "8",
    ]);
    let sv = json(&sc);
    *support = Some(verdict(
        sc.code == 0 && sv["violations"] == 0 && sv["cases"].as_u64().unwrap_or(0) > 0,
        format!(
            "{} single-fault cases, {} outside the fault support",
            sv["cases"], sv["violations"]
        ),
    ));
    let took = start.elapsed();
    notes.insert(
        0,
        format!(
            "{cases} cases over 12 checks, 0 counterexamples expected, {}",
            secs(took)
        ),
    );
    verdict(pass && took < Duration::from_secs(600), notes.join("; "))
}

fn teleportation() -> Verdict {
    let start = Instant::now();
    let r = pi8_teleport_check(16).expect("dense teleport check runs");
    let took = start.elapsed();
    let covered = ["zero", "one", "plus"].iter().all(|name| {
        [false, true].iter().all(|&o| {
            r.branches
                .iter()
                .any(|b| b.input == *name && b.outcome == o)
        })
    });
    let worst = r
        .branches
        .iter()
        .map(|b| (b.fidelity - 1.0).abs())
        .fold(0.0, f64::max);
    verdict(
        r.passed(TELEPORT_TOLERANCE) && covered && took < Duration::from_secs(60),
        format!(
            "{} branches, |0>, |1>, |+> with both outcomes: {covered}, worst |1 - fidelity| = {:.1e}, {}",
            r.branches.len(),
            worst,
            secs(took)
        ),
    )
}

fn good_implies_correct() -> Verdict {
    let start = Instant::now();
    let p = cnot_exrec(&BundledCode::SevenQubit.code(), GadgetSet::default()).unwrap();
    let (cases, failures) = single_fault_failures(&p);
    let took = start.elapsed();
    verdict(
        failures == 0 && cases > 0 && took < Duration::from_secs(600),
        format!(
            "{} locations, {cases} single faults, {failures} logical failures, {}",
            p.num_locations(),
            secs(took)
        ),
    )
}

fn csv_path() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance_threshold.csv")
}

fn threshold_behaviour() -> Verdict {
    let start = Instant::now();
    let jobs_text = jobs().to_string();
    let path = csv_path();
    let seed = SEED.to_string();
    let trials = TRIALS.to_string();
    let c = cli(&[
        "ft",
        "threshold",
        "--code",
        "steane7",
        "--exrec",
        "cnot",
        "--noise",
        "depolarizing",
        "--p-grid",
        GRID,
        "--trials",
        &trials,
        "--seed",
        &seed,
        "--jobs",
        &jobs_text,
        "--out",
        path.to_str().unwrap(),
    ]);
    if c.code != 0 {
        return verdict(false, format!("threshold run failed: {}", c.stderr));
    }
    let text = std::fs::read_to_string(&path).unwrap();
    let reports = parse_threshold_csv(&text, SEED).expect("CSV parses");
    for r in &reports {
        println!(
            "    p={:.3e} failures={} rate={:.3e} ci=[{:.3e}, {:.3e}]",
            r.p, r.failures, r.failure_rate, r.wilson_95_interval.0, r.wilson_95_interval.1
        );
    }

    // A decrease counts only when the two intervals are disjoint.
    let strictly = reports.windows(2).all(|w| w[0].failures <= w[1].failures);
    let significant_drop = reports
        .windows(2)
        .any(|w| w[1].wilson_95_interval.1 < w[0].wilson_95_interval.0);
    let monotone = reports.len() == 20 && !significant_drop;

    let fit = fit_quadratic(&reports, FIT_MAX_P);
    let count = cli(&[
        "ft",
        "count",
        "--exrec",
        "cnot",
        "--malignant",
        "--jobs",
        &jobs_text,
    ]);
    let predicted = json(&count)["malignant_weight"]
        .as_f64()
        .unwrap_or(f64::NAN);
    let (fit_ok, fit_note) = match &fit {
        Ok(f) => {
            let ratio = f.coefficient / predicted;
            (
                f.r_squared >= MIN_R_SQUARED
                    && (1.0 / FIT_FACTOR..=FIT_FACTOR).contains(&ratio),
                format!(
                    "c = {:.4e} from {} points (R² = {:.4}), malignant-pair weight {:.4e}, ratio {:.3}",
                    f.coefficient, f.points, f.r_squared, predicted, ratio
                ),
            )
        }
        Err(e) => (false, format!("fit failed: {e}")),
    };

    let below = |r: &MonteCarloReport| r.wilson_95_interval.1 < r.p;
    let above = |r: &MonteCarloReport| r.wilson_95_interval.0 > r.p;
    let lo = reports.iter().rposition(below);
    let hi = lo.and_then(|i| reports[i + 1..].iter().position(above).map(|j| i + 1 + j));
    let (cross_ok, cross_note) = match (lo, hi) {
        (Some(i), Some(j)) => {
            let protocol = build_exrec(&stabkit::cli::ExRecArgs {
                code: "steane7".into(),
                exrec: "cnot".into(),
                prep: stabkit::cli::PrepArg::Verify,
            })
            .unwrap();
            let noise = NoiseModel::depolarizing(reports[j].p).unwrap();
            // Same nested fault draws as the sweep, so grid points reproduce.
            let p_top = reports.last().unwrap().p;
            let pt = pseudo_threshold(
                |p| {
                    sweep(&protocol, &noise, &[p, p_top], TRIALS, SEED, jobs())
                        .map(|mut v| v.remove(0))
                        .map_err(|e| stabkit_core::Error::Domain(e.to_string()))
                },
                reports[i].p,
                reports[j].p,
                BISECTION_STEPS,
            )
            .expect("bisection runs");
            for r in &pt.evaluations {
                println!(
                    "    bisection p={:.4e} failures={} ci=[{:.3e}, {:.3e}]",
                    r.p, r.failures, r.wilson_95_interval.0, r.wilson_95_interval.1
                );
            }
            (
                pt.conclusive,
                format!(
                    "rate < p at {:.3e}, rate > p at {:.3e}, crossing bracketed in [{:.3e}, {:.3e}] after {} evaluations",
                    reports[i].p,
                    reports[j].p,
                    pt.lower,
                    pt.upper,
                    pt.evaluations.len()
                ),
            )
        }
        _ => (
            false,
            "no grid points with separated intervals on both sides".into(),
        ),
    };
    let took = start.elapsed();
    verdict(
        monotone && fit_ok && cross_ok && took < Duration::from_secs(7200),
        format!(
            "monotone={monotone} (strict={strictly}); {fit_note}; {cross_note}; {}",
            secs(took)
        ),
    )
}

fn analytic_recursion() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pass = true;
    for _ in 0..20 {
        let t = rng.random_range(1..=3usize);
        let threshold = 10f64.powf(rng.random_range(-5.0..-2.0));
        let p = threshold * rng.random_range(0.01..0.9);
        let target = 10f64.powf(rng.random_range(-20.0..-3.0));
        let levels = levels_needed(target, p, threshold, t).unwrap();
        let a = threshold.powi(-(t as i32));
        let b = level_reduction_bound(p, a, t, levels as usize).unwrap();
        let last = b.rates[levels as usize];
        let reached = last <= target * (1.0 + 1e-9);
        let minimal = levels == 0 || b.rates[levels as usize - 1] > target;
        pass &= reached && minimal;
    }
    let worked = levels_needed(1e-15, 1e-4, 1e-3, 1).unwrap();
    let via_cli = json(&cli(&[
        "ft",
        "levels",
        "--p",
        "1e-4",
        "--threshold",
        "1e-3",
        "--target",
        "1e-15",
    ]))["levels"]
        .as_u64();
    verdict(
        pass && worked == 4 && via_cli == Some(4),
        format!("20 random draws consistent={pass}; worked example L = {worked}"),
    )
}

fn determinism() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let circuit = dir.path().join("c.txt");
    std::fs::write(
        &circuit,
        "QUBITS 3\nH 0\nCNOT 0 1\nMEAS +XXI\nMEAS +ZII\nH 2\nMEAS +ZIZ\n",
    )
    .unwrap();
    let circuit = circuit.to_str().unwrap();
    let threaded: Vec<Vec<&str>> = vec![
        vec![
            "sim",
            "run",
            "--circuit",
            circuit,
            "--shots",
            "64",
            "--seed",
            "5",
        ],
        vec![
            "sim",
            "run",
            "--circuit",
            circuit,
            "--shots",
            "64",
            "--seed",
            "5",
            "--engine",
            "dense",
        ],
        vec!["ft", "check", "--gadget", "steane-ec", "--property", "ecb"],
        vec![
            "ft",
            "check",
            "--gadget",
            "steane-ec",
            "--property",
            "support",
        ],
        vec![
            "ft",
            "check",
            "--gadget",
            "broken-steane-ec",
            "--property",
            "eca",
        ],
        vec![
            "ft",
            "threshold",
            "--exrec",
            "sample",
            "--p-grid",
            "1e-3:1e-1:log4",
            "--trials",
            "400",
            "--seed",
            "42",
        ],
        vec!["ft", "count", "--exrec", "prep-measure", "--malignant"],
    ];
    let single: Vec<Vec<&str>> = vec![
        vec!["code", "distance", "--code", "five_qubit"],
        vec!["code", "params", "--code", "nine_qubit"],
        vec!["code", "check", "--code", "seven_qubit"],
        vec![
            "code",
            "syndrome",
            "--code",
            "seven_qubit",
            "--error",
            "IIZIIII",
        ],
        vec!["code", "show", "--code", "five_qubit"],
        vec!["code", "kl", "--code", "nine_qubit"],
        vec!["code", "bounds"],
        vec!["css", "build", "--c1", "hamming", "--c2", "hamming"],
        vec![
            "ft",
            "build-gadget",
            "--gadget",
            "prep-x",
            "--prep",
            "project",
        ],
        vec!["ft", "count", "--exrec", "cnot"],
        vec!["ft", "teleport"],
        vec![
            "ft",
            "levels",
            "--p",
            "2e-4",
            "--threshold",
            "1e-3",
            "--target",
            "1e-12",
        ],
    ];
    let mut failures = Vec::new();
    let mut runs = 0;
    for args in single.iter().chain(threaded.iter()) {
        let a = cli(args);
        let b = cli(args);
        runs += 2;
        if a.stdout != b.stdout || a.code != b.code || a.stdout.is_empty() {
            failures.push(args.join(" "));
        }
    }
    for args in &threaded {
        let mut more = args.clone();
        more.extend(["--jobs", "3"]);
        runs += 1;
        if cli(args).stdout != cli(&more).stdout {
            failures.push(format!("{} (jobs 3)", args.join(" ")));
        }
    }
    let changed = cli(&threaded[5]).stdout
        != cli(&[&threaded[5][..threaded[5].len() - 1], &["43"]].concat()).stdout;
    verdict(
        failures.is_empty() && changed,
        format!(
            "{} subcommand invocations compared, {} differ{}",
            runs,
            failures.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!(": {}", failures.join(", "))
            }
        ),
    )
}

fn main() {
    let mut results: Vec<(u32, &str, Verdict)> = Vec::new();
    let mut record = |n: u32, name: &'static str, v: Verdict| {
        println!(
            "criterion {n:>2} {name}: {} ({})",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        results.push((n, name, v));
    };
    record(1, "code parameters", code_parameters());
    record(2, "Knill-Laflamme", knill_laflamme());
    record(3, "bounds table", bounds_table());
    record(4, "Clifford oracle equivalence", clifford_oracle());
    let mut support = None;
    let gadgets = gadget_properties(&mut support);
    record(5, "gadget properties", gadgets);
    record(6, "Steane EC support", support.expect("support check ran"));
    record(7, "pi/8 teleportation", teleportation());
    record(8, "good implies correct", good_implies_correct());
    record(9, "threshold behaviour", threshold_behaviour());
    record(10, "analytic recursion", analytic_recursion());
    record(11, "determinism", determinism());
    let failed: Vec<u32> = results
        .iter()
        .filter(|(_, _, v)| !v.pass)
        .map(|(n, _, _)| *n)
        .collect();
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
