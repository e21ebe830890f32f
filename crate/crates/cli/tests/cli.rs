use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use ctcsim::GaussianRational;
use serde_json::Value;

fn program(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/programs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ctcsim")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn temp_program(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".ctc").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn grandfather_is_ambiguous_at_one_half() {
    let o = run(&["decide", program("grandfather.ctc").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    let out = stdout(&o);
    assert!(out.contains("exact accept probability: 1/2"), "{out}");
    assert!(out.contains("verdict: ambiguous"), "{out}");
}

#[test]
fn np_search_demo_finds_the_solution() {
    let o = run(&["demo", "np-search", "--param", "n=2", "--param", "solutions=10", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["distribution"], serde_json::json!({ "10": "1" }));
    assert_eq!(v["verdict"], "accept");
}

#[test]
fn np_search_without_solutions_rejects() {
    let o = run(&["demo", "np-search", "--param", "n=2", "--param", "solutions=none"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn non_unitary_defgate_is_reported_with_its_row() {
    let f = temp_program("quantum\nregisters ctc=1 cr=1\ndefgate B = [1, 1; 0, 1]\napply B ctc[0]\noutput cr[0]\n");
    let o = run(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("row"), "{err}");
    // Other subcommands refuse the program with the same code.
    assert_eq!(run(&["decide", f.path().to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn exit_codes_for_bad_input() {
    let f = temp_program("quantum\nregisters ctc=1 cr=1\napply NOPE ctc[0]\noutput cr[0]\n");
    assert_eq!(run(&["decide", f.path().to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["decide", "/nonexistent/file.ctc"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["decide", "--bogus-flag", "x"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn resource_cap_exits_five() {
    let f = temp_program("quantum\nregisters ctc=4 cr=1\napply X ctc[0]\noutput cr[0]\n");
    assert_eq!(run(&["decide", f.path().to_str().unwrap()]).status.code(), Some(5));
}

fn assert_exact_fields_round_trip(v: &Value) {
    for row in v["fixed_point"].as_array().unwrap() {
        for e in row.as_array().unwrap() {
            let s = e.as_str().expect("exact entries are strings");
            let g: GaussianRational = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
    }
    let p = v["exact_accept_probability"].as_str().unwrap();
    assert_eq!(p.parse::<GaussianRational>().unwrap().to_string(), p);
}

#[test]
fn json_round_trips_and_is_deterministic() {
    for name in ["grandfather.ctc", "rotation.ctc", "forced_one.ctc", "drift.ctc", "grandfather_classical.ctc"] {
        let path = program(name);
        let a = run(&["decide", path.to_str().unwrap(), "--json"]);
        let b = run(&["decide", path.to_str().unwrap(), "--json"]);
        assert_eq!(a.stdout, b.stdout, "{name}: output differs between runs");
        let v = json(&a);
        assert_eq!(v["schema_version"], 1);
        assert!(v.get("timings_ms").is_none());
        assert_exact_fields_round_trip(&v);
        let f = run(&["fixpoint", path.to_str().unwrap(), "--seed", "mixed", "--json"]);
        assert_eq!(f.status.code(), Some(0));
        assert_exact_fields_round_trip(&json(&f));
    }
}

#[test]
fn rotation_fixed_point_is_maximally_mixed() {
    let o = run(&["fixpoint", program("rotation.ctc").to_str().unwrap(), "--seed", "basis:1", "--json"]);
    let v = json(&o);
    assert_eq!(v["fixed_point"], serde_json::json!([["1/2", "0"], ["0", "1/2"]]));
}

#[test]
fn oracle_reports_small_deviation() {
    let o = run(&["oracle", program("drift.ctc").to_str().unwrap(), "--steps", "100000", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let dev = json(&o)["details"]["max_deviation_approx"].as_f64().unwrap();
    assert!(dev < 1e-4, "{dev}");
}

#[test]
fn demos_run() {
    assert_eq!(run(&["demo", "grandfather"]).status.code(), Some(4));
    let p = json(&run(&["demo", "pspace", "--json"]));
    assert_eq!(p["details"]["matches_uniform_run"], true);
    let n = run(&["demo", "narrow", "--param", "witnesses=none", "--json"]);
    assert_eq!(n.status.code(), Some(1));
    assert_eq!(json(&n)["distribution"], serde_json::json!({ "0": "1" }));
    let per = json(&run(&["demo", "perturb", "--param", "eps=1/100", "--json"]));
    assert_eq!(per["details"]["a_stationary_under_b_distance"], "1/100");
    assert_eq!(run(&["demo", "perturb", "--param", "bogus=1"]).status.code(), Some(2));
}

#[test]
fn timings_are_opt_in() {
    let o = run(&["decide", program("grandfather.ctc").to_str().unwrap(), "--json", "--timings"]);
    assert!(json(&o)["timings_ms"].is_object());
}
