//! End-to-end tests against the built binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_varbound"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary finishes")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

const SATURATING_PAULI_INSTANCE: &str = r#"{
    "state": {"kind": "pure", "ket": [[1.0, 0.0], [0.0, 0.0]]},
    "observables": [
        [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
        [[[0.0, 0.0], [0.0, -1.0]], [[0.0, 1.0], [0.0, 0.0]]]
    ],
    "weights": [[1.0, 0.0], [1.0, 0.0]],
    "params": {"broadcast": {"a": [0.0, 0.0], "b": [1.0, 0.0], "m": [0.3, 0.0], "n": [0.2, 0.0]}}
}"#;

#[test]
fn fig1_csv_shape_and_endpoints() {
    let out = run(&["fig1", "--grid-points", "101", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "abs_a,sov,lower,upper");
    assert_eq!(lines.len(), 102);
    for idx in [1, 101] {
        let fields: Vec<f64> = lines[idx].split(',').map(|f| f.parse().unwrap()).collect();
        let (sov, lower, upper) = (fields[1], fields[2], fields[3]);
        assert!(
            (lower - sov).abs() <= 1e-9 * (1.0 + sov),
            "row {idx} lower not saturated"
        );
        assert!(
            (upper - sov).abs() <= 1e-9 * (1.0 + sov),
            "row {idx} upper not saturated"
        );
    }
}

#[test]
fn fig1_json_carries_fixture_decimals() {
    let out = run(&["fig1", "--grid-points", "11", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["command"], "fig1");
    assert_eq!(doc["grid_points"], 11);
    // the embedded fixture round-trips its printed decimals
    assert_eq!(doc["fixture"]["observables"][0][0][0][0], 5.2528);
    assert_eq!(doc["fixture"]["ket_raw"][0][0], 0.1452);
    assert_eq!(doc["columns"][0]["name"], "sov");
}

#[test]
fn fig2_csv_shape() {
    let out = run(&["fig2", "--grid-points", "21", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines[0], "theta,sov,lb,ub,fb,pb,tb1,tbm,tb2");
    assert_eq!(lines.len(), 22);
    // LB <= SOV <= UB and FB > PB on every row
    for line in &lines[1..] {
        let f: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let (sov, lb, ub, fb, pb) = (f[1], f[2], f[3], f[4], f[5]);
        assert!(lb <= sov + 1e-9 && sov <= ub + 1e-9);
        assert!(fb > pb);
    }
}

#[test]
fn fig2_theta_range_override() {
    let two_pi = std::f64::consts::TAU;
    let out = run(&[
        "fig2",
        "--grid-points",
        "3",
        "--theta-range",
        "0",
        &two_pi.to_string(),
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let last = text.trim_end().lines().last().unwrap();
    let theta: f64 = last.split(',').next().unwrap().parse().unwrap();
    assert!((theta - two_pi).abs() < 1e-9);
}

#[test]
fn compare_reads_stdin_and_reports() {
    let out = run_with_stdin(&["compare"], SATURATING_PAULI_INSTANCE);
    assert!(out.status.success(), "stderr: {:?}", out.stderr);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["all_ok"], true);
    assert_eq!(doc["saturating"], true);
    assert_eq!(doc["weighted_sov"], 2.0);
    let bounds = doc["bounds"].as_array().unwrap();
    let value = |name: &str| -> f64 {
        bounds
            .iter()
            .find(|b| b["name"] == name)
            .unwrap_or_else(|| panic!("missing bound {name}"))["value"]
            .as_f64()
            .unwrap()
    };
    assert!((value("robertson") - 1.0).abs() < 1e-9);
    assert!((value("schrodinger") - 1.0).abs() < 1e-9);
    assert!((value("mp") - 2.0).abs() < 1e-9);
    assert!((value("lower") - 2.0).abs() < 1e-9);
    assert!((value("upper") - 2.0).abs() < 1e-9);
}

#[test]
fn compare_handles_mixed_state_documents() {
    let mixed = r#"{
        "state": {"kind": "mixed", "rho": [[[0.5, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.5, 0.0]]]},
        "observables": [
            [[[0.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [0.0, 0.0]]],
            [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [-1.0, 0.0]]]
        ],
        "weights": [[1.0, 0.0], [1.0, 0.0]],
        "params": {"broadcast": {"a": [0.1, 0.0], "b": [1.0, 0.0], "m": [0.5, 0.0], "n": [0.4, 0.0]}}
    }"#;
    let out = run_with_stdin(&["compare"], mixed);
    assert!(out.status.success(), "stderr: {:?}", out.stderr);
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["all_ok"], true);
    // isotropic qubit state: Var(sx) = Var(sz) = 1
    assert_eq!(doc["weighted_sov"], 2.0);
    // the sum-form pair bounds are pure-state only and must be absent
    let names: Vec<&str> = doc["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["name"].as_str().unwrap())
        .collect();
    assert!(!names.contains(&"mp"));
    assert!(names.contains(&"robertson"));
}

#[test]
fn compare_rejects_bad_input_with_exit_1() {
    let out = run_with_stdin(&["compare"], "{ not json");
    assert_eq!(out.status.code(), Some(1));
    let out = run_with_stdin(&["compare"], r#"{"state": {"kind": "pure"}}"#);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_summary_is_clean() {
    let out = run(&["verify", "--seed", "42", "--instances", "100"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["command"], "verify");
    assert_eq!(doc["instances"], 100);
    assert_eq!(doc["failures"], 0);
    assert!(doc["max_residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(doc["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_exit_2_on_impossible_tolerance() {
    // An absurdly tight saturation tolerance forces a reported violation:
    // exit code 2, document still written.
    let out = run(&[
        "verify",
        "--seed",
        "42",
        "--instances",
        "20",
        "--tol",
        "saturation_rel=1e-300",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(doc["failures"].as_u64().unwrap() > 0);
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(
        err.contains("saturation"),
        "stderr identifies the check: {err}"
    );
    assert!(err.contains("instance"), "stderr identifies the row: {err}");
}

#[test]
fn random_suite_summary_is_clean() {
    let out = run(&["random-suite", "--seed", "7", "--instances", "40"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(doc["command"], "random-suite");
    assert_eq!(doc["failures"], 0);
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 2);
    for check in checks {
        assert_eq!(check["failures"], 0);
    }
}

#[test]
fn config_errors_exit_1() {
    assert_eq!(run(&["fig1", "--grid-points", "1"]).status.code(), Some(1));
    assert_eq!(
        run(&["fig2", "--theta-range", "3.0", "1.0"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["verify", "--tol", "bogus=1"]).status.code(), Some(1));
    assert_eq!(
        run(&["verify", "--tol", "sandwich_rel=-1"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn output_file_lands_in_env_directory() {
    let dir = std::env::temp_dir().join(format!("varbound-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = bin()
        .args(["fig1", "--grid-points", "5", "--output", "split.csv"])
        .env("VARBOUND_OUT_DIR", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let written = std::fs::read_to_string(dir.join("split.csv")).unwrap();
    assert!(written.starts_with("abs_a,sov,lower,upper"));
    assert!(
        !dir.join("split.csv.tmp").exists(),
        "temp file renamed away"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn help_exits_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["fig1", "--help"]).status.code(), Some(0));
}
