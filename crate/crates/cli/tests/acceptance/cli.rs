use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ftgates(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ftgates")).args(args).output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn constants_report() {
    let out = ftgates(&["constants"]);
    assert!(out.status.success());
    let v = report(&out);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["command"], "constants");
    assert_eq!(v["config"]["seed"], 0);
    assert!((v["result"]["cosLambdaPi"].as_f64().unwrap() - 0.853_553_390_6).abs() < 1e-10);
    assert!((v["result"]["lambda"].as_f64().unwrap() - 0.174_44).abs() < 1e-4);
    assert!(v["result"]["axisDot"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn verify_identities_exits_zero() {
    let out = ftgates(&["verify", "--suite", "identities"]);
    assert!(out.status.success());
    let v = report(&out);
    let ids = v["result"]["reports"][0]["identities"].as_array().unwrap();
    assert_eq!(ids.len(), 9);
    for id in ids {
        assert_eq!(id["holds"], true, "{id}");
        assert_eq!(id["mode"], "exact-ring");
    }
}

#[test]
fn synth_from_matrix_file() {
    let dir = tempfile::tempdir().unwrap();
    let c = (std::f64::consts::PI / 8.0).cos();
    let s = (std::f64::consts::PI / 8.0).sin();
    let t = write(dir.path(), "t.json", &format!("[[[{c}, 0], [0, {s}]], [[0, {s}], [{c}, 0]]]"));
    let out = ftgates(&["synth", "--target", &t, "--eps", "0.05"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = report(&out);
    assert!(v["result"]["error"].as_f64().unwrap() < 0.05);
    assert!(v["result"]["recheckedError"].as_f64().unwrap() < 0.05);
    assert_eq!(v["config"]["eps"], 0.05);
    let words = v["result"]["word"].as_array().unwrap();
    assert!(words.iter().all(|g| ["H", "T", "Tdag"].contains(&g.as_str().unwrap())));
}

#[test]
fn synth_precision_floor_is_usage_error() {
    let out = ftgates(&["synth", "--target", "h", "--eps", "1e-6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_circuit_names_field() {
    let dir = tempfile::tempdir().unwrap();
    let bad_type = write(dir.path(), "a.json", r#"{"width": 1, "gates": [{"name": "H", "targets": "zero"}]}"#);
    let out = ftgates(&["simulate", "--input", &bad_type]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gates[0].targets"));
    let bad_gate = write(dir.path(), "b.json", r#"{"width": 1, "gates": [{"name": "Q", "targets": [0]}]}"#);
    let out = ftgates(&["simulate", "--input", &bad_gate]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gates[0].name"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ftgates(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(ftgates(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ftgates(&["gadget", "eigenprep", "--force-branch", "x"]).status.code(), Some(2));
}

#[test]
fn t_gadget_both_branches() {
    let dir = tempfile::tempdir().unwrap();
    let s = write(dir.path(), "psi.json", "[[0.6, 0.0], [0.0, 0.8]]");
    for b in ["0", "1"] {
        let out = ftgates(&["gadget", "t", "--input", &s, "--force-branch", b]);
        assert!(out.status.success());
        let v = report(&out);
        assert!(v["result"]["fidelityWithT"].as_f64().unwrap() > 1.0 - 1e-12);
        assert_eq!(v["result"]["protocol"], "T_GADGET");
        assert_eq!(v["result"]["correctionsApplied"].as_array().unwrap().len(), if b == "1" { 1 } else { 0 });
    }
}

#[test]
fn eigenprep_toffoli_state() {
    let out = ftgates(&["gadget", "eigenprep", "--u", "toffoli", "--force-branch", "+"]);
    assert!(out.status.success());
    let v = report(&out);
    let amps = v["result"]["output"].as_array().unwrap();
    for (i, a) in amps.iter().enumerate() {
        let want = if [0, 2, 4, 7].contains(&i) { 0.5 } else { 0.0 };
        assert!((a[0].as_f64().unwrap() - want).abs() < 1e-12 && a[1].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn seeds_are_reproducible_and_matter() {
    let a = ftgates(&["gadget", "eigenprep", "--seed", "11"]);
    let b = ftgates(&["gadget", "eigenprep", "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let outcomes: std::collections::BTreeSet<String> = (0..20)
        .map(|s| {
            let v = report(&ftgates(&["gadget", "eigenprep", "--seed", &s.to_string()]));
            v["result"]["outcomeTrace"][0]["outcome"].as_str().unwrap().to_string()
        })
        .collect();
    assert_eq!(outcomes.len(), 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let out = ftgates(&["constants", "--out", p.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    assert_eq!(v["config"]["command"], "constants");
}
