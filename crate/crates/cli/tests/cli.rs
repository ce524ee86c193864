//! End-to-end runs of the `struve` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn struve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_struve"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const PASSING: &str = r#"{"cases": [
    {"variant": "theorem1", "a": 1, "lambda": 2, "mu": 0.6, "b": 1, "c": 1, "p": [1], "y": [1]},
    {"variant": "theorem2", "a": 2, "lambda": 3, "mu": "0.6+0.2i", "b": 1, "c": 1, "p": [0.5], "y": [0.5]}
]}"#;

#[test]
fn eval_documented_examples() {
    for (args, expected) in [
        (&["eval", "oberhettinger", "a=1", "mu=1", "lambda=2"][..], "3.333333333333333e-1"),
        (&["eval", "struve_w", "p=0", "b=0", "c=0", "z=2"][..], "1.128379167095513"),
        (&["eval", "pfq", "upper=2", "lower=", "z=0.5"][..], "4.0"),
    ] {
        let o = struve(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert_eq!(stdout(&o).lines().next(), Some(expected), "{args:?}");
    }
}

#[test]
fn eval_prints_series_diagnostics() {
    let o = struve(&["eval", "struve_h", "nu=0.5", "z=1"]);
    let text = stdout(&o);
    assert!(text.contains("terms: ") && text.contains("tail_estimate: "), "{text}");
}

#[test]
fn eval_exit_codes() {
    let o = struve(&["eval", "struve_w", "p=0", "b=0", "c=0", "z=oops"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`z`"));
    let o = struve(&["eval", "oberhettinger", "a=1", "mu=2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`lambda`"));
    let o = struve(&["--max-terms", "3", "eval", "struve_h", "nu=0", "z=5"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = struve(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_passing_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "cases.json", PASSING);
    let o = struve(&["verify", &input]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["summary"]["passed"], 2);
    assert_eq!(report["cases"][1]["case"]["variant"], "theorem2");
    assert!(report["cases"][0]["diagnostics"]["quad_panels"].as_u64().unwrap() > 0);
    assert!(report["version"].is_string() && report["timestamp"].is_string());
}

#[test]
fn verify_condition_violation_fails_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let text = PASSING.replace("\"lambda\": 2,", "\"lambda\": -4,");
    let input = write(dir.path(), "bad.json", &text);
    let o = struve(&["verify", &input]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["cases"][0]["pass"], false);
    assert!(report["cases"][0]["reason"].as_str().unwrap().starts_with("condition violated: "));
    assert_eq!(report["cases"][1]["pass"], true);
    assert_eq!(report["summary"]["failed"], 1);
}

#[test]
fn verify_empty_list() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "empty.json", r#"{"cases": []}"#);
    let o = struve(&["verify", &input]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["summary"]["total"], 0);
    assert_eq!(report["cases"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "broken.json", r#"{"cases": [{"variant": "theorem1"}]}"#);
    let o = struve(&["verify", &input]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cases[0].a: missing"), "{}", stderr(&o));
    let o = struve(&["verify", "/nonexistent/cases.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_tolerance_override_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "cases.json", PASSING);
    let out = dir.path().join("report.csv");
    let o = struve(&["--format", "csv", "--tol", "1e-9", "--jobs", "1", "--output", out.to_str().unwrap(), "verify", &input]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut rd = csv::Reader::from_path(&out).unwrap();
    let header = rd.headers().unwrap().clone();
    let tol_col = header.iter().position(|h| h == "tolerance_used").unwrap();
    let rows: Vec<_> = rd.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][tol_col].parse::<f64>().unwrap(), 1e-9);
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "cases.json", PASSING);
    let numeric = |jobs: &str| {
        let o = struve(&["--jobs", jobs, "verify", &input]);
        let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v.as_object_mut().unwrap().remove("timestamp");
        for case in v["cases"].as_array_mut().unwrap() {
            case.as_object_mut().unwrap().remove("wall_clock_s");
        }
        v
    };
    assert_eq!(numeric("1"), numeric("4"));
}

#[test]
fn grid_documented_examples() {
    let o = struve(&[
        "grid", "--variant", "theorem1", "--n", "1", "--mu", "0.5:1.5:0.5", "--lambda", "2", "--p", "1", "--b",
        "1", "--c", "1", "--a", "1", "--y", "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let file: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(file["cases"].as_array().unwrap().len(), 3);

    let o = struve(&[
        "grid", "--variant", "theorem1", "--mu", "4:5:0.5", "--lambda", "2", "--p", "1", "--b", "1", "--c", "1",
        "--a", "1", "--y", "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let file: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(file["cases"].as_array().unwrap().len(), 0);
    assert!(stderr(&o).contains("warning"));

    let o = struve(&[
        "grid", "--variant", "theorem1", "--n", "2", "--mu", "1", "--lambda", "2", "--p", "1,0.5", "--b", "1",
        "--c", "1", "--a", "1", "--y", "1,2",
    ]);
    let file: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(file["cases"][0]["p"].as_array().unwrap().len(), 2);
    assert_eq!(file["cases"][0]["y"].as_array().unwrap().len(), 2);
}

#[test]
fn grid_malformed_ranges() {
    for mu in ["1.5:0.5:0.5", "0.5:1.5:0", "0.5:1.5", "x"] {
        let o = struve(&[
            "grid", "--variant", "theorem1", "--mu", mu, "--lambda", "2", "--p", "1", "--b", "1", "--c", "1",
            "--a", "1", "--y", "1",
        ]);
        assert_eq!(o.status.code(), Some(2), "{mu}");
        assert!(stderr(&o).contains("--mu"), "{mu}: {}", stderr(&o));
    }
}

#[test]
fn grid_output_feeds_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cases = dir.path().join("grid.json");
    let o = struve(&[
        "--output", cases.to_str().unwrap(), "grid", "--variant", "theorem2", "--mu", "0.6,1", "--lambda", "3",
        "--p", "0.5", "--b", "1", "--c", "1", "--a", "1", "--y", "1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = struve(&["verify", cases.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["summary"]["total"], 2);
}
