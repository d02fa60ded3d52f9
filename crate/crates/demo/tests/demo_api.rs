use gnl_demo::{symmetry_scan_json, two_mode_class_json, wire_graph_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn wire_graph_reports_exact_nullifiers() {
    let v = parse(&wire_graph_json(5, 0.5).unwrap());
    assert_eq!(v["modes"], 10);
    let half = 0.5 * f64::tanh(0.5);
    for e in v["edges"].as_array().unwrap() {
        assert!((e["re"].as_f64().unwrap().abs() - half).abs() < 1e-12);
    }
    let nulls = v["nullifiers"].as_array().unwrap();
    assert_eq!(nulls.len(), 5);
    assert!(nulls.iter().all(|n| n["residual"].as_f64().unwrap() <= 1e-12));
}

#[test]
fn scan_separates_nullifiers_from_others() {
    let pass = parse(&symmetry_scan_json("wire", 4, 0.5, "global-x", 32).unwrap());
    assert_eq!(pass["is_nullifier"], true);
    let devs = pass["deviations"].as_array().unwrap();
    assert_eq!(devs.len(), 32);
    assert!(devs.iter().all(|d| d.as_f64().unwrap() <= 1e-9));

    let fail = parse(&symmetry_scan_json("tms", 0, 0.5, "sx", 16).unwrap());
    assert_eq!(fail["is_nullifier"], false);
    let peak = fail["deviations"].as_array().unwrap().iter().map(|d| d.as_f64().unwrap()).fold(0.0, f64::max);
    assert!(peak > 0.1);
}

#[test]
fn scan_rejects_bad_requests() {
    assert!(symmetry_scan_json("tms", 0, 0.5, "sz", 0).is_err());
    assert!(symmetry_scan_json("tms", 0, -0.5, "sz", 8).is_err());
    assert!(symmetry_scan_json("wire", 3, 0.5, "global-z", 8).is_err());
}

#[test]
fn two_mode_class_for_sy_is_identity() {
    let v = parse(&two_mode_class_json(0.0, 0.0, 1.0, 0.0).unwrap());
    assert_eq!(v["dimension"], 1);
    let b = &v["basis"][0];
    assert!((b[0][0].as_f64().unwrap() - b[2][0].as_f64().unwrap()).abs() < 1e-10);
    assert!(two_mode_class_json(0.0, 0.0, 0.0, 0.0).is_err());
}
