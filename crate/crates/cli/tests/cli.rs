//! End-to-end tests of the orbitvol binary: JSON outputs, exit codes, and
//! reproducibility flags.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn orbitvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitvol"))
        .args(args)
        .output()
        .expect("failed to spawn orbitvol")
}

fn orbitvol_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitvol"))
        .args(args)
        .env(key, value)
        .output()
        .expect("failed to spawn orbitvol")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is not JSON")
}

const MIXED_STATE: &str = r#"{"rows":4,"cols":4,"re":[0.25,0,0,0,0,0.25,0,0,0,0,0.25,0,0,0,0,0.25],"im":[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],"dims":[2,2]}"#;

const BELL_STATE: &str = r#"{"rows":4,"cols":4,"re":[0.5,0,0,0.5,0,0,0,0,0,0,0,0,0.5,0,0,0.5],"im":[0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0],"dims":[2,2]}"#;

#[test]
fn exact_volume_22() {
    let out = stdout_json(&orbitvol(&["lu-volume", "--m", "2", "--n", "2", "--exact"]));
    assert_eq!(out["rational"], "16/105");
    assert_eq!(out["pi_power"], 2);
    let approx = out["approx"].as_f64().unwrap();
    assert!((approx - 16.0 / 105.0 * std::f64::consts::PI.powi(2)).abs() < 1e-12);
}

#[test]
fn tensor_volume_22_is_128_pi5() {
    let out = stdout_json(&orbitvol(&["tensor-volume", "--m", "2", "--n", "2"]));
    assert_eq!(out["rational"], "128/1");
    assert_eq!(out["pi_power"], 5);
}

#[test]
fn dims_22() {
    let out = stdout_json(&orbitvol(&["dims", "--m", "2", "--n", "2"]));
    assert_eq!(out["dim_dlu"], 7);
}

#[test]
fn symp_and_lu_orbit() {
    let out = stdout_json(&orbitvol(&["symp-orbit", "--values", "0.7,0.3"]));
    assert!((out["value"].as_f64().unwrap() - 0.4).abs() < 1e-12);
    assert_eq!(out["regular"], true);

    let out = stdout_json(&orbitvol(&[
        "lu-orbit", "--m", "2", "--n", "2", "--values", "0.4,0.3,0.2,0.1",
    ]));
    assert!((out["value"].as_f64().unwrap() - 0.08).abs() < 1e-12);
}

#[test]
fn density_value() {
    let out =
        stdout_json(&orbitvol(&["density", "--m", "2", "--n", "2", "--values", "0.4,0.3,0.2,0.1"]));
    assert!((out["value"].as_f64().unwrap() - 0.0016).abs() < 1e-15);
}

#[test]
fn mc_is_reproducible_and_thread_invariant() {
    let args = ["lu-volume", "--m", "2", "--n", "2", "--mc", "--samples", "50000", "--seed", "11"];
    let a = orbitvol(&args);
    let b = orbitvol(&args);
    assert_eq!(a.stdout, b.stdout, "same seed must give identical bytes");
    let one = orbitvol_env(&args, "ORBITVOL_THREADS", "1");
    let four = orbitvol_env(&args, "ORBITVOL_THREADS", "4");
    assert_eq!(one.stdout, four.stdout, "worker count must not change the result");
    let other = orbitvol(&[
        "lu-volume", "--m", "2", "--n", "2", "--mc", "--samples", "50000", "--seed", "12",
    ]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn is_locally_diag_inline_and_stdin() {
    let out = stdout_json(&orbitvol(&["is-locally-diag", "--json", MIXED_STATE]));
    assert_eq!(out["locally_diagonalizable"], true);
    assert_eq!(out["method"], "geometric");
    assert!(out["witness"]["a_z"].is_number());

    let mut child = Command::new(env!("CARGO_BIN_EXE_orbitvol"))
        .args(["is-locally-diag", "--stdin"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(BELL_STATE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["locally_diagonalizable"], false);
    assert_eq!(json["witness"], serde_json::Value::Null);
}

#[test]
fn lu_invariants_and_equivalence() {
    let out = stdout_json(&orbitvol(&["lu-invariants", "--json", BELL_STATE]));
    let trace_family = out["invariants"]["trace_family"].as_array().unwrap();
    assert!((trace_family[0].as_f64().unwrap() - 3.0).abs() < 1e-12);

    let out = stdout_json(&orbitvol(&[
        "lu-equivalent", "--a-json", BELL_STATE, "--b-json", BELL_STATE,
    ]));
    assert_eq!(out["equivalent"], true);

    let out = stdout_json(&orbitvol(&[
        "lu-equivalent", "--a-json", BELL_STATE, "--b-json", MIXED_STATE,
    ]));
    assert_eq!(out["equivalent"], false);
}

#[test]
fn file_input_source() {
    let path = std::env::temp_dir().join(format!("orbitvol-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, MIXED_STATE).unwrap();
    let out = stdout_json(&orbitvol(&["lu-invariants", "--file", path.to_str().unwrap()]));
    assert!(out["invariants"]["r_family"][0].as_f64().unwrap().abs() < 1e-14);
    std::fs::remove_file(&path).ok();
}

#[test]
fn xstate_and_bravyi() {
    let out = stdout_json(&orbitvol(&["xstate-eigs", "--diag", "1,0,0,0"]));
    let eigs = out["eigenvalues"].as_array().unwrap();
    assert!((eigs[0].as_f64().unwrap() - 1.0).abs() < 1e-14);

    let out = stdout_json(&orbitvol(&[
        "bravyi", "--spectrum", "0.5,0.5,0,0", "--lambda-a", "0", "--lambda-b", "0",
    ]));
    assert_eq!(out["satisfied"], false);
}

#[test]
fn weyl_and_mix_marginals() {
    let out = stdout_json(&orbitvol(&["weyl", "--d", "2"]));
    assert_eq!(out["unitaries"].as_array().unwrap().len(), 4);

    let out = stdout_json(&orbitvol(&["mix-marginals", "--json", MIXED_STATE]));
    assert_eq!(out["state"]["dims"], serde_json::json!([2, 2]));
    assert_eq!(out["unitary"]["rows"], 4);
}

#[test]
fn haar_emits_json_lines() {
    let out = orbitvol(&["haar", "--n", "3", "--seed", "5", "--count", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    for line in lines {
        let m: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(m["rows"], 3);
        assert_eq!(m["cols"], 3);
    }
}

#[test]
fn hc_volume_parts() {
    let flag = stdout_json(&orbitvol(&["hc-volume", "--n", "4"]));
    assert_eq!(flag["rational"], "16/3");
    assert_eq!(flag["pi_power"], 6);
    let group = stdout_json(&orbitvol(&["hc-volume", "--n", "2", "--part", "group"]));
    assert_eq!(group["rational"], "8/1");
    assert_eq!(group["pi_power"], 3);
}

#[test]
fn exit_codes() {
    // unknown subcommand: usage on stderr, exit 64
    let out = orbitvol(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    // validation error: {"error": ...} on stdout, exit 2
    let out = orbitvol(&["lu-volume", "--m", "2", "--n", "2", "--mc", "--samples", "5000"]);
    assert_eq!(out.status.code(), Some(2));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["error"].as_str().unwrap().contains("seed"));

    let out = orbitvol(&["lu-volume", "--m", "2", "--n", "5", "--exact"]);
    assert_eq!(out.status.code(), Some(2));

    let out = orbitvol(&["is-locally-diag", "--json", "{not json"]);
    assert_eq!(out.status.code(), Some(2));

    // state JSON without dims metadata is a dimension error
    let no_dims = r#"{"rows":2,"cols":2,"re":[0.5,0,0,0.5],"im":[0,0,0,0]}"#;
    let out = orbitvol(&["lu-invariants", "--json", no_dims]);
    assert_eq!(out.status.code(), Some(2));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["error"].as_str().unwrap().contains("dims"));

    // help exits 0
    let out = orbitvol(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}
