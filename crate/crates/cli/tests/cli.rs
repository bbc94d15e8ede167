use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn ordspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordspace")).args(args).output().expect("binary runs")
}

fn run(file: &str, extra: &[&str]) -> Output {
    let path = data(file);
    let mut args = vec!["run", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    ordspace(&args)
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let f = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(f.path(), contents).unwrap();
    f
}

#[test]
fn leq_on_orthant_meets_expectation() {
    let out = run("leq.json", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("2 met, 0 mismatched"));
}

#[test]
fn zero_denominator_is_an_input_error() {
    let out = run("bad_rational.json", &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn elin_verdicts_come_with_reverified_evidence() {
    let out = run("elin.json", &["--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    let queries = report["queries"].as_array().unwrap();
    assert_eq!(queries.len(), 3);
    assert_eq!(queries[0]["detail"]["verdict"]["verdict"], "CONVERGES");
    assert_eq!(queries[0]["detail"]["verdict"]["certificate"]["witness"]["shape"], "indicator_from");
    assert_eq!(queries[1]["detail"]["verdict"]["refutation"]["kind"], "SUPPORT_ESCAPES");
    assert_eq!(queries[2]["detail"]["verdict"]["refutation"]["kind"], "COORDINATE_GROWTH");
    assert!(queries.iter().all(|q| q["detail"]["reverified"] == true));
}

#[test]
fn k4_problem_file_meets_every_expectation() {
    let out = run("k4.json", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn reports_are_deterministic_apart_from_the_timestamp() {
    let strip = |out: &Output| {
        let mut v = json_of(out);
        v.as_object_mut().unwrap().remove("timestamp");
        serde_json::to_string(&v).unwrap()
    };
    let a = run("k4.json", &["--format", "json", "--seed", "7"]);
    let b = run("k4.json", &["--format", "json", "--seed", "7"]);
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn mismatch_exits_one() {
    let f = write_temp(r#"{"version": 1, "queries": [{"op": "is_lattice", "args": ["K4"], "expected": true}]}"#);
    let out = ordspace(&["run", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn schema_violations_exit_two() {
    for bad in [
        r#"{"version": 1, "queries": [], "extra": 1}"#,
        r#"{"version": 9, "queries": []}"#,
        r#"{"version": 1, "queries": [{"op": "nonsense", "args": []}]}"#,
        r#"{"version": 1, "queries": [{"op": "leq", "args": ["NOPE", ["1"], ["2"]]}]}"#,
        r#"{"version": 1, "queries": [{"op": "leq", "args": ["ORTH2", ["1"], ["2", "0"]]}]}"#,
    ] {
        let f = write_temp(bad);
        let out = ordspace(&["run", f.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{bad}");
    }
}

#[test]
fn out_flag_writes_the_report() {
    let f = tempfile::NamedTempFile::new().unwrap();
    let path = data("leq.json");
    let out = ordspace(&["run", path.to_str().unwrap(), "--format", "json", "--out", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(f.path()).unwrap()).unwrap();
    assert_eq!(v["summary"]["met"], 2);
}

#[test]
fn suites_report_pass_and_unknown_names_fail() {
    let out = ordspace(&["suite", "elin"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("passed"));
    assert_eq!(ordspace(&["suite", "missing"]).status.code(), Some(2));
}
