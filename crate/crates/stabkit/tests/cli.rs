use std::path::Path;
use std::process::Command;

use proptest::prelude::*;
use stabkit::emit::{fmt_float, parse_threshold_csv, round12, threshold_csv};
use stabkit_core::codes::BundledCode;
use stabkit_core::ft::check::replay;
use stabkit_core::ft::{broken_steane_ec, BlockDecoder, GadgetCheckReport};
use stabkit_core::PauliOperator;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn stabkit(args: &[&str]) -> Run {
    let mut argv = vec!["stabkit"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = stabkit::run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn five_qubit_distance_is_three() {
    let r = stabkit(&["code", "distance", "--code", "five_qubit"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "3\n"));
}

#[test]
fn bundled_code_parameters() {
    for (name, want) in [
        ("five_qubit", "[[5,1,3]]\n"),
        ("seven_qubit", "[[7,1,3]]\n"),
        ("nine_qubit", "[[9,1,3]]\n"),
    ] {
        assert_eq!(stabkit(&["code", "params", "--code", name]).stdout, want);
    }
}

#[test]
fn non_commuting_generators_exit_one_with_listing() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.stab", "n=2 k=0\nXI\nZI\n");
    let r = stabkit(&["code", "check", "--file", &bad]);
    assert_eq!(r.code, 1);
    assert!(r
        .stdout
        .contains("violation: generators 0 and 1 anticommute"));
    let good = stabkit(&["code", "check", "--code", "steane7"]);
    assert_eq!(good.code, 0);
    assert!(good.stdout.starts_with("ok:"));
}

#[test]
fn usage_errors_exit_two_with_help() {
    let r = stabkit(&["code", "distance", "--code", "five_qubit", "--bogus"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("Usage"));
    assert_eq!(stabkit(&["code", "distance"]).code, 2);
    assert_eq!(
        stabkit(&["ft", "check", "--gadget", "nope", "--property", "eca"]).code,
        2
    );
    assert_eq!(
        stabkit(&["ft", "check", "--gadget", "steane-ec", "--property", "x"]).code,
        2
    );
    assert_eq!(stabkit(&["ft", "threshold", "--p-grid", "1:2:sq3"]).code, 2);
    assert_eq!(stabkit(&["--help"]).code, 0);
}

#[test]
fn domain_errors_exit_one() {
    let r = stabkit(&["code", "distance", "--file", "/nonexistent/x.stab"]);
    assert_eq!(r.code, 1);
    let r = stabkit(&[
        "ft",
        "check",
        "--gadget",
        "steane-ec",
        "--property",
        "gatea",
    ]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("does not apply"));
    let r = stabkit(&[
        "ft",
        "levels",
        "--p",
        "0.01",
        "--threshold",
        "0.001",
        "--target",
        "1e-9",
    ]);
    assert_eq!(r.code, 1);
}

#[test]
fn code_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["five_qubit", "seven_qubit", "nine_qubit"] {
        let text = stabkit(&["code", "show", "--code", name]).stdout;
        let f = write(dir.path(), "c.stab", &text);
        assert_eq!(stabkit(&["code", "show", "--file", &f]).stdout, text);
    }
}

#[test]
fn css_from_hamming_is_the_seven_qubit_code() {
    let dir = tempfile::tempdir().unwrap();
    let h = write(dir.path(), "h.mat", "1111000\n1100110\n1010101\n");
    let r = stabkit(&["css", "build", "--c1", &h, "--c2", "hamming"]);
    assert_eq!(r.code, 0);
    let f = write(dir.path(), "css.stab", &r.stdout);
    assert_eq!(
        stabkit(&["code", "params", "--file", &f]).stdout,
        "[[7,1,3]]\n"
    );
    let bad = write(dir.path(), "rep.mat", "1100000\n0110000\n");
    assert_eq!(
        stabkit(&["css", "build", "--c1", &bad, "--c2", "hamming"]).code,
        1
    );
}

#[test]
fn syndrome_of_single_error() {
    let r = stabkit(&[
        "code",
        "syndrome",
        "--code",
        "five_qubit",
        "--error",
        "IXIII",
    ]);
    assert_eq!(
        r.stdout,
        "syndrome 1000\ncorrection +IXIII\nlogical identity\n"
    );
    let r = stabkit(&[
        "code",
        "syndrome",
        "--code",
        "seven_qubit",
        "--error",
        "XXIIIII",
    ]);
    assert!(r.stdout.ends_with("logical error\n"));
}

#[test]
fn knill_laflamme_verdicts() {
    let five = stabkit(&["code", "kl", "--code", "five_qubit"]);
    assert_eq!(five.code, 0);
    assert!(five.stdout.contains("\"is_degenerate\": false"));
    let nine = stabkit(&["code", "kl", "--code", "nine_qubit"]);
    assert!(nine.stdout.contains("\"is_degenerate\": true"));
    let weight2 = stabkit(&["code", "kl", "--code", "five_qubit", "--weight", "2"]);
    assert_eq!(weight2.code, 1);
}

#[test]
fn bound_table_rows() {
    let r = stabkit(&["code", "bounds"]);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "n,k,d,hamming,gv,singleton");
    // Σ_{n=1..10} n·(min(2,n)+1)
    assert_eq!(lines.len() - 1, 164);
    assert!(lines.contains(&"5,1,3,tight,fails,tight"));
    assert!(lines.contains(&"4,1,3,fails,fails,fails"));
    let json = stabkit(&["code", "bounds", "--format", "json", "--max-n", "3"]);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2 + 6 + 9);
}

#[test]
fn simulation_is_seeded_and_engine_independent_when_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(
        dir.path(),
        "c.txt",
        "H 0\nCNOT 0 1\nMEAS ZZ\nMEAS XX\nMEAS ZI\n",
    );
    let a = stabkit(&[
        "sim",
        "run",
        "--circuit",
        &c,
        "--shots",
        "50",
        "--seed",
        "9",
    ]);
    let b = stabkit(&[
        "sim",
        "run",
        "--circuit",
        &c,
        "--shots",
        "50",
        "--seed",
        "9",
        "--jobs",
        "4",
    ]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let d = stabkit(&[
        "sim",
        "run",
        "--circuit",
        &c,
        "--shots",
        "50",
        "--engine",
        "dense",
    ]);
    for line in a.stdout.lines().chain(d.stdout.lines()) {
        assert_eq!(&line[..2], "00");
    }
    let ones = a.stdout.lines().filter(|l| l.ends_with('1')).count();
    assert!((10..=40).contains(&ones));
    let t = write(dir.path(), "t.txt", "H 0\nT 0\nMEAS X\n");
    assert_eq!(stabkit(&["sim", "run", "--circuit", &t]).code, 1);
    assert_eq!(
        stabkit(&["sim", "run", "--circuit", &t, "--engine", "dense"]).code,
        0
    );
}

#[test]
fn dense_limit_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "c.txt", "H 4\nMEAS ZIIII\n");
    let bin = env!("CARGO_BIN_EXE_stabkit");
    let run = |limit: &str| {
        Command::new(bin)
            .args(["sim", "run", "--circuit", &c, "--engine", "dense"])
            .env("STABKIT_DENSE_LIMIT", limit)
            .output()
            .unwrap()
    };
    let small = run("4");
    assert_eq!(small.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&small.stderr).contains("exceeds limit 4"));
    assert_eq!(run("5").status.code(), Some(0));
    assert_eq!(run("five").status.code(), Some(2));
}

#[test]
fn threshold_csv_is_reproducible_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = |name: &str, jobs: &str| {
        let p = dir.path().join(name);
        let r = stabkit(&[
            "ft",
            "threshold",
            "--code",
            "steane7",
            "--exrec",
            "cnot",
            "--noise",
            "depolarizing",
            "--p-grid",
            "1e-3:1e-1:log5",
            "--trials",
            "3e2",
            "--seed",
            "42",
            "--jobs",
            jobs,
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.is_empty());
        std::fs::read_to_string(p).unwrap()
    };
    let a = out("a.csv", "1");
    assert_eq!(a, out("b.csv", "1"));
    assert_eq!(a, out("c.csv", "3"));
    assert!(a.starts_with("p,trials,failures,rate,ci_lo,ci_hi\n0.001,300,"));
    let reports = parse_threshold_csv(&a, 42).unwrap();
    assert_eq!(reports.len(), 5);
    assert_eq!(threshold_csv(&reports).unwrap(), a);
}

#[test]
fn failed_gadget_check_reports_a_replayable_pattern() {
    let r = stabkit(&[
        "ft",
        "check",
        "--code",
        "steane7",
        "--gadget",
        "broken-steane-ec",
        "--property",
        "ecb",
        "--t",
        "1",
    ]);
    assert_eq!(r.code, 1);
    let report: GadgetCheckReport = serde_json::from_str(&r.stdout).unwrap();
    assert!(!report.passed);
    let cx = report.counterexample.expect("counterexample");
    let g = broken_steane_ec(&BundledCode::SevenQubit.code()).unwrap();
    let out = replay(&g, &cx).unwrap();
    let dec = BlockDecoder::new(&g.code).unwrap();
    let input = cx
        .inputs
        .first()
        .map_or_else(|| PauliOperator::identity(7), |r| r.pauli.clone());
    assert_ne!(dec.ideal_decode(&out[0].pauli), dec.ideal_decode(&input));
}

#[test]
fn sharded_gadget_check_matches_single_worker() {
    let args = |jobs: &'static str| {
        [
            "ft",
            "check",
            "--gadget",
            "prep-z",
            "--property",
            "prepb",
            "--jobs",
            jobs,
        ]
    };
    let one = stabkit(&args("1"));
    assert_eq!(one.code, 0, "{}", one.stderr);
    assert_eq!(one.stdout, stabkit(&args("3")).stdout);
}

#[test]
fn gadget_circuit_text_parses_as_a_simulator_circuit() {
    let r = stabkit(&["ft", "build-gadget", "--gadget", "steane-ec"]);
    assert_eq!(r.code, 0);
    let c = stabkit_core::clifford::SimCircuit::parse(&r.stdout).unwrap();
    assert!(c.num_measurements() > 0);
}

#[test]
fn count_report_fields() {
    let r = stabkit(&["ft", "count", "--exrec", "cnot"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["locations"], 719);
    assert_eq!(v["A"], 258121);
    assert_eq!(v["p_T_bound"].as_f64().unwrap(), round12(1.0 / 258121.0));
    assert!(v.get("malignant_pairs").is_none());
    assert_eq!(
        stabkit(&["ft", "count", "--exrec", "cnot", "--t", "2", "--malignant"]).code,
        2
    );
}

#[test]
fn levels_worked_example() {
    let r = stabkit(&[
        "ft",
        "levels",
        "--p",
        "1e-4",
        "--threshold",
        "1e-3",
        "--target",
        "1e-15",
    ]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["levels"], 4);
    assert!(v["rates"][4].as_f64().unwrap() <= 1e-15);
}

#[test]
fn teleport_check_passes() {
    let r = stabkit(&["ft", "teleport"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("\"fidelity\": 1"));
}

proptest! {
    #[test]
    fn printed_floats_parse_back(x in prop::num::f64::NORMAL) {
        let s = fmt_float(x);
        let back: f64 = s.parse().unwrap();
        prop_assert_eq!(back, round12(x));
        prop_assert_eq!(round12(back), back);
        prop_assert_eq!(fmt_float(back), s);
    }
}
