use std::process::Command;

use proptest::prelude::*;
use serde_json::{json, Value};

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = purefield_cli::run(std::iter::once("purefield").chain(args.iter().copied()), &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn run_json(args: &[&str]) -> Value {
    let r = run(args);
    assert_eq!(r.code, 0, "{args:?}: {}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

#[test]
fn index_of_degree_nine() {
    let v = run_json(&["index", "--n", "9", "--m", "55"]);
    assert_eq!(v["index"], json!({ "3": 4 }));
    assert_eq!(v["total"], json!(81));
    assert_eq!(v["polygon"]["3"], json!({ "bound": 4, "exact": true }));
    let minus = run_json(&["index", "--n", "9", "--m", "-26"]);
    assert_eq!(minus["index"], json!({ "3": 4 }));
}

#[test]
fn invalid_inputs_exit_2() {
    for args in [
        &["index", "--n", "9", "--m", "28"][..],
        &["index", "--n", "9", "--m", "1"],
        &["index", "--n", "9", "--m", "-1"],
        &["index", "--n", "9", "--m", "0"],
        &["basis", "--n", "1", "--m", "5"],
        &["verify", "--n", "4", "--m", "-12"],
        &["atlas", "--n", "1"],
        &["polygon", "--p", "4", "--k", "1", "--m", "3"],
        &["polygon", "--p", "3", "--k", "0", "--m", "3"],
        &["index", "--n", "9"],
        &["frobnicate"],
    ] {
        let r = run(args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(r.out.is_empty(), "{args:?} wrote {}", r.out);
        assert!(!r.err.is_empty());
    }
    assert!(run(&["index", "--n", "9", "--m", "28"]).err.contains("divisible by 2^2"));
}

#[test]
fn quadratic_atlas() {
    let v = run_json(&["atlas", "--n", "2"]);
    assert_eq!(v["n0"], json!(4));
    let rows = v["rows"].as_object().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows["0"], json!({ "skip": "class has no square-free members" }));
    assert_eq!(rows["1"]["witness"], json!(-3));
    assert_eq!(rows["1"]["basis"], json!([["1"], ["1/2", "1/2"]]));
    assert_eq!(rows["2"]["basis"], json!([["1"], ["0", "1"]]));
    assert_eq!(rows["3"]["basis"], json!([["1"], ["0", "1"]]));
}

#[test]
fn pretty_b53() {
    let r = run(&["basis", "--n", "12", "--m", "53", "--format", "pretty"]);
    assert_eq!(r.code, 0);
    let expected = "B_53 = (1, X, X^2, X^3, X^4, X^5, (X^6+1)/2, (X^7+X)/2, (X^8+2X^4+3X^2+4)/6, \
                    (X^9+2X^5+3X^3+4X)/6, (X^10+2X^6+3X^4+4X^2)/6, (X^11+2X^7+3X^5+4X^3)/6)";
    assert!(r.out.lines().any(|l| l == expected), "{}", r.out);
    assert!(r.out.contains("index: 2^6 * 3^4 = 5184"));
}

#[test]
fn basis_json_shape() {
    let v = run_json(&["basis", "--n", "3", "--m", "10"]);
    assert_eq!(v["elements"][2], json!({ "num": [1, 1, 1], "den": 3 }));
    assert_eq!(v["index"], json!({ "3": 1 }));
    assert_eq!(v["disc_poly"], json!(-2700));
    assert_eq!(v["disc_field"], json!(-300));
    assert_eq!(v["hnf"]["den"], json!(3));
    assert_eq!(v["hnf"]["matrix"], json!([[3, 0, 0], [0, 3, 0], [1, 1, 1]]));
}

#[test]
fn polygon_json_and_ascii() {
    let v = run_json(&["polygon", "--p", "3", "--k", "2", "--m", "28"]);
    assert_eq!(v["vertices"], json!([[0, 3], [1, 2], [3, 1], [9, 0]]));
    assert_eq!(v["phi_index"], json!(4));
    assert_eq!(v["phi"], json!("X+2"));
    let slopes: Vec<&str> = v["sides"].as_array().unwrap().iter().map(|s| s["slope"].as_str().unwrap()).collect();
    assert_eq!(slopes, ["-1/1", "-1/2", "-1/6"]);
    assert!(v["sides"].as_array().unwrap().iter().all(|s| s["separable"] == json!(true)));
    let r = run(&["polygon", "--p", "3", "--k", "2", "--m", "28", "--format", "pretty"]);
    assert!(r.out.contains("0 | . . . . . . . . . o"), "{}", r.out);
    assert!(r.out.contains("phi-index 4 (regular)"));
}

#[test]
fn verify_and_budget() {
    let v = run_json(&["verify", "--n", "6", "--m", "19"]);
    assert_eq!(v["certified"], json!(true));
    assert_eq!(v["maximality"], json!({ "2": "proved", "3": "proved" }));
    let r = run(&["verify", "--n", "6", "--m", "19", "--enum-budget", "1"]);
    assert_eq!(r.code, 3);
    assert!(r.err.contains("skipped"));
    assert_eq!(run(&["verify", "--n", "6", "--m", "19", "--enum-budget", "1", "--allow-skipped"]).code, 0);
    let exhaustive = run_json(&["verify", "--n", "4", "--m", "-7", "--strategy", "exhaustive"]);
    assert_eq!(exhaustive["certified"], json!(true));
}

#[test]
fn unknown_square_freeness() {
    // product of the two smallest primes above the trial-division bound
    let m = "100000980001501";
    let r = run(&["index", "--n", "2", "--m", m]);
    assert_eq!(r.code, 3);
    assert!(r.err.contains("square-free"));
    let v = run_json(&["index", "--n", "2", "--m", m, "--allow-unknown-squarefree"]);
    assert_eq!(v["total"], json!(2));
}

#[test]
fn output_path() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    let p = path.to_str().unwrap();
    let r = run(&["basis", "--n", "4", "--m", "5", "--output-path", p]);
    assert_eq!(r.code, 0);
    assert!(r.out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, run(&["basis", "--n", "4", "--m", "5"]).out);
    let pretty = run(&["basis", "--n", "4", "--m", "5", "--output-path", p, "--format", "pretty"]);
    assert!(pretty.out.starts_with("Q(5^(1/4))"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_purefield");
    let ok = Command::new(bin).args(["index", "--n", "9", "--m", "55"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stderr.is_empty());
    let bad = Command::new(bin).args(["index", "--n", "9", "--m", "28"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}

fn round_trips(args: &[&str]) {
    let first = run(args);
    assert_eq!(first.code, 0, "{args:?}: {}", first.err);
    let v: Value = serde_json::from_str(&first.out).unwrap();
    assert_eq!(purefield_cli::json::to_text(&v), first.out, "{args:?}");
    assert_eq!(run(args).out, first.out, "{args:?} not deterministic");
}

#[test]
fn json_round_trip_fixed() {
    round_trips(&["atlas", "--n", "6"]);
    round_trips(&["polygon", "--p", "2", "--k", "3", "--m", "-15"]);
    round_trips(&["verify", "--n", "12", "--m", "-71"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn json_round_trip(n in 2u64..=10, m in -200i64..200) {
        prop_assume!(purefield::purebasis::PureField::new(n, m).is_ok());
        let (n, m) = (n.to_string(), m.to_string());
        round_trips(&["basis", "--n", &n, "--m", &m]);
        round_trips(&["index", "--n", &n, "--m", &m]);
    }
}
