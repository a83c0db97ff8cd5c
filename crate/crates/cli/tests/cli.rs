//! End-to-end tests of the binary: wire formats, exit codes, determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rmanyon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn cf_golden_ratio() {
    let out = run(&["cf", "--theta", r#"{"P":1,"Q":2,"D":5}"#]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"preperiod":[],"period":[1]}"#);
}

#[test]
fn pentagon_golden_passes() {
    let out = run(&["pentagon", "--golden"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    assert!(v["residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn braid_zero_anyons_is_identity() {
    let out = run(&["braid", "--n", "0", "--word", "[]"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["dim"], 1);
    assert_eq!(v["operator"]["data"][0][0], 1.0);
}

#[test]
fn failing_check_exits_one() {
    let out = run(&["pentagon", "--golden", "--tol", "1e-20"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_error_exits_two() {
    let out = run(&["cf", "--theta", "not json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_config_is_byte_identical() {
    let args = [
        "verify-all",
        "--seed",
        "12345",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let sweep = ["pentagon", "--search", "1", "--seed", "7"];
    let a = run(&sweep);
    let b = run(&sweep);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn export_dot_emits_graphviz() {
    let out = run(&[
        "export-dot",
        "--theta",
        r#"{"P":1,"Q":2,"D":5}"#,
        "--levels",
        "5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("->"));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("rmanyon-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cf.json");
    let out = run(&[
        "cf",
        "--theta",
        r#"{"P":1,"Q":1,"D":2}"#,
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    assert_eq!(contents, r#"{"preperiod":[],"period":[2]}"#);
}

#[test]
fn telescope_round_trips_through_json() {
    let diagram = run(&[
        "bratteli",
        "--theta",
        r#"{"P":1,"Q":2,"D":5}"#,
        "--levels",
        "7",
    ]);
    assert!(diagram.status.success());
    let text = stdout(&diagram);
    let out = run(&["telescope", "--diagram", text.trim(), "--cuts", "0,1,3,5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    // Telescoped 2-level steps are [[2,1],[1,1]].
    assert_eq!(v["incidence"][1][0][0], 2);
    assert_eq!(v["incidence"][1][1][1], 1);
}

#[test]
fn verify_all_passes() {
    let out = run(&["verify-all"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["pass"], serde_json::Value::Bool(true));
    assert_eq!(v["total"], 12);
    assert_eq!(v["passed"], 12);
}

#[test]
fn smatrix_silver_normalization() {
    let out = run(&["smatrix", "--theta", r#"{"P":1,"Q":1,"D":2}"#]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let s00 = v["s_matrix"]["data"][0][0].as_f64().unwrap();
    let expect = 1.0 / (4.0 + 2.0 * 2.0f64.sqrt()).sqrt();
    assert!((s00 - expect).abs() < 1e-12);
    assert!(v["involution_residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn dilog_pentagon_reports_and_passes_on_completion() {
    let out = run(&["dilog-pentagon", "--q", "2"]);
    assert!(out.status.success(), "completion is the pass condition");
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["completed"], serde_json::Value::Bool(true));
    assert!(v["branch_log"].as_array().unwrap().len() > 3);
}

#[test]
fn qdilog_scalar_value() {
    let out = run(&["qdilog", "--zeta", "1/2", "--z", "0.5"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let expect = 0.75f64.powf(0.25) * 1.5f64.powf(-0.5);
    assert!((v["value"][0].as_f64().unwrap() - expect).abs() < 1e-13);
}
