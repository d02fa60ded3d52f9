use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gnl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gnl")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn tms_dot_has_one_edge() {
    let o = gnl(&["state", "tms", "--alpha", "0.5", "--format", "dot"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert_eq!(dot.matches(" -- ").count(), 1);
    assert!(dot.contains("0 -- 1 [label=\"0.462117+0i\""));
}

#[test]
fn wire_json_entries() {
    let o = gnl(&["state", "wire", "--spins", "4", "--alpha", "0.5"]);
    let v = json(&o);
    assert_eq!(v["n"], 8);
    let half = 0.5 * f64::tanh(0.5);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 64);
    for e in entries {
        let re = e[0].as_f64().unwrap();
        assert!(re == 0.0 || (re.abs() - half).abs() < 1e-12);
        assert!((re.abs() - 0.231058).abs() < 1e-6 || re == 0.0);
    }
}

#[test]
fn hgraph_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.json", r#"{"n": 2, "entries": [0, 1, 1, 0]}"#);
    let v = json(&gnl(&["state", "hgraph", "--g", &g, "--alpha", "0.3"]));
    assert!((v["entries"][1][0].as_f64().unwrap() - f64::tanh(0.3)).abs() < 1e-12);
}

#[test]
fn nullifier_dimensions() {
    let v = json(&gnl(&["nullifiers", "tms", "--alpha", "0.5"]));
    assert_eq!(v["dimension"], 1);
    assert!(v["expressions"][0].as_str().unwrap().contains("S^z_{0,1}"));
    assert_eq!(json(&gnl(&["nullifiers", "vacuum", "--modes", "2"]))["dimension"], 4);
    let wire = json(&gnl(&["nullifiers", "wire", "--spins", "4", "--alpha", "0.5"]));
    assert!(wire["dimension"].as_u64().unwrap() >= 4);
}

#[test]
fn check_exit_codes() {
    let pass = gnl(&["check", "tms", "--alpha", "0.5", "--gen", "sz", "--cutoff", "12"]);
    assert_eq!(pass.status.code(), Some(0));
    assert!(stdout(&pass).starts_with("gnl-report v1\n"));
    assert!(stdout(&pass).contains("NULLIFIER residual"));
    let fail = gnl(&["check", "tms", "--alpha", "0.5", "--gen", "sx", "--cutoff", "12"]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("NOT a nullifier; residual 4.62e-1"));
    let local = gnl(&["check", "wire", "--spins", "5", "--alpha", "0.5", "--gen", "local:2"]);
    assert_eq!(local.status.code(), Some(0));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        vec!["state", "tms", "--alpha", "-1"],
        vec!["state", "wire", "--spins", "2", "--alpha", "0.5"],
        vec!["state", "mystery"],
        vec!["check", "tms", "--alpha", "0.5"],
        vec!["check", "tms", "--alpha", "0.5", "--gen", "global-x"],
        vec!["twomode", "0", "0", "0", "0"],
        vec!["nullifiers", "tms", "--alpha", "0.5", "--format", "dot"],
        vec!["state", "file", "--k", "/nonexistent/k.json"],
        vec!["oracle", "tms", "--alpha", "0.5", "--cutoff", "5"],
    ] {
        let o = gnl(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn twomode_classes() {
    let v = json(&gnl(&["twomode", "0", "0", "1", "0", "--format", "json"]));
    assert_eq!(v["dimension"], 1);
    let b = &v["basis"][0];
    assert!((b[0][0].as_f64().unwrap() - b[2][0].as_f64().unwrap()).abs() < 1e-10);
    assert!(b[1][0].as_f64().unwrap().abs() < 1e-10);
    let delta_only = json(&gnl(&["twomode", "0", "0", "0", "-2", "--format", "json"]));
    assert_eq!(delta_only["dimension"], 1);
}

#[test]
fn generator_file_and_config() {
    let dir = tempfile::tempdir().unwrap();
    let gen = write(dir.path(), "gen.json", r#"{"n": 2, "terms": [{"axis": "z", "pair": [1, 0], "coeff": 2.0}]}"#);
    let o = gnl(&["check", "tms", "--alpha", "0.5", "--gen-file", &gen]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let cfg = write(dir.path(), "cfg.json", r#"{"state": "tms", "alpha": 0.5, "generator": "sx", "format": "json"}"#);
    let v = json(&gnl(&["check", "--config", &cfg]));
    assert_eq!(v["is_nullifier"], false);
    // Flags win over the config file.
    let v = json(&gnl(&["check", "--config", &cfg, "--gen", "sz"]));
    assert_eq!(v["is_nullifier"], true);
    let bad = write(dir.path(), "bad.json", r#"{"alpah": 0.5}"#);
    assert_eq!(gnl(&["state", "tms", "--config", &bad]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k.dot");
    let o = gnl(&["export", "tms-pair", "--alpha", "0.5", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("graph K {"));
}

#[test]
fn file_state_round_trips_through_json() {
    let dir = tempfile::tempdir().unwrap();
    let k = stdout(&gnl(&["state", "bell:psi+", "--alpha", "0.5"]));
    let path = write(dir.path(), "k.json", &k);
    let again = stdout(&gnl(&["state", "file", "--k", &path]));
    assert_eq!(k, again);
    let o = gnl(&["oracle", "file", "--k", &path, "--cutoff", "6", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["fock"]["cutoff"], 6);
}

#[test]
fn nullifiers_are_deterministic() {
    let args = ["nullifiers", "wire", "--spins", "3", "--alpha", "0.4", "--format", "text"];
    assert_eq!(gnl(&args).stdout, gnl(&args).stdout);
}
