//! Browser demo. Each export takes plain numbers/strings and returns a JSON string.

use gnl_core::graph::{tms_k, AdjacencyMatrix};
use gnl_core::nullifier::{is_nullifier, symmetry_deviations, theta_grid, two_mode_invariant_class};
use gnl_core::states::{
    bell_analogue, dual_rail_wire, four_mode_symmetries, six_mode_symmetry_decomposition, tms_pair, wire_exotic_y,
    wire_global_x, wire_global_z, wire_local_nullifier, wire_local_nullifiers, WireLayout,
};
use gnl_core::{Axis, SchwingerExpression};
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_SPINS: usize = 12;
const MAX_POINTS: usize = 512;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn layout(spins: usize, alpha: f64) -> Result<WireLayout, String> {
    if spins > MAX_SPINS {
        return Err(format!("at most {MAX_SPINS} spins"));
    }
    WireLayout::new(spins, alpha).map_err(err)
}

/// Edges, labels and local nullifiers of the dual-rail wire.
pub fn wire_graph_json(spins: usize, alpha: f64) -> Result<String, String> {
    let layout = layout(spins, alpha)?;
    let k = dual_rail_wire(&layout).map_err(err)?;
    let n = k.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let w = k[(i, j)];
            if w.norm() > 1e-12 {
                edges.push(json!({"i": i, "j": j, "re": w.re, "im": w.im}));
            }
        }
    }
    let labels: Vec<String> = (0..n).map(|m| layout.label(m)).collect();
    let nullifiers: Vec<_> = wire_local_nullifiers(&layout)
        .iter()
        .map(|e| {
            let residual = is_nullifier(&e.to_matrix(), &k).map(|c| c.residual).unwrap_or(f64::NAN);
            json!({"expression": e.display_with(|m| layout.label(m)), "residual": residual})
        })
        .collect();
    Ok(json!({"modes": n, "spins": spins, "labels": labels, "edges": edges, "nullifiers": nullifiers}).to_string())
}

struct DemoState {
    k: AdjacencyMatrix,
    layout: Option<WireLayout>,
}

fn build_state(name: &str, spins: usize, alpha: f64) -> Result<DemoState, String> {
    let (k, layout) = match name {
        "tms" => (tms_k(alpha).map_err(err)?, None),
        "tms-pair" => (tms_pair(alpha).map_err(err)?, None),
        "wire" => {
            let l = layout(spins, alpha)?;
            (dual_rail_wire(&l).map_err(err)?, Some(l))
        }
        _ => match name.strip_prefix("bell:") {
            Some(v) => (bell_analogue(v.parse().map_err(err)?, alpha).map_err(err)?.0, None),
            None => return Err(format!("unknown state '{name}'")),
        },
    };
    Ok(DemoState { k, layout })
}

fn build_generator(name: &str, state: &DemoState) -> Result<SchwingerExpression, String> {
    let n = state.k.n();
    let wire = || state.layout.as_ref().ok_or_else(|| format!("{name} needs the wire state"));
    let (head, arg) = name.split_once(':').map_or((name, None), |(h, a)| (h, Some(a)));
    let axis = match head {
        "s0" => Some(Axis::Zero),
        "sx" => Some(Axis::X),
        "sy" => Some(Axis::Y),
        "sz" => Some(Axis::Z),
        _ => None,
    };
    if let Some(axis) = axis {
        let (r, s) = match arg {
            None => (0, 1),
            Some(a) => {
                let (r, s) = a.split_once(',').ok_or("expected r,s")?;
                (r.trim().parse().map_err(err)?, s.trim().parse().map_err(err)?)
            }
        };
        return SchwingerExpression::single(n, axis, r, s, 1.0).map_err(err);
    }
    let four = |i: usize| {
        if n == 4 {
            Ok(four_mode_symmetries().swap_remove(i).0)
        } else {
            Err(format!("{name} needs a 4-mode state"))
        }
    };
    match (head, arg) {
        ("local", Some(i)) => {
            let l = wire()?;
            let i: usize = i.trim().parse().map_err(err)?;
            if i >= l.n_spins {
                return Err(format!("spin {i} out of range"));
            }
            Ok(wire_local_nullifier(l, i))
        }
        ("global-x", None) => Ok(wire_global_x(wire()?)),
        ("global-z", None) => wire_global_z(wire()?).map_err(err),
        ("exotic-y", None) => wire_exotic_y(wire()?).map_err(err),
        ("six-mode", None) => Ok(six_mode_symmetry_decomposition(wire()?, 0.0).map_err(err)?.generator),
        ("four-x", None) => four(0),
        ("four-y", None) => four(1),
        ("four-z", None) => four(2),
        _ => Err(format!("unknown generator '{name}'")),
    }
}

/// `max |W K Wᵀ − K|` over a θ grid, plus the algebraic residual.
pub fn symmetry_scan_json(state: &str, spins: usize, alpha: f64, generator: &str, points: usize) -> Result<String, String> {
    if points == 0 || points > MAX_POINTS {
        return Err(format!("points must be in 1..={MAX_POINTS}"));
    }
    let s = build_state(state, spins, alpha)?;
    let e = build_generator(generator, &s)?;
    let m = e.to_matrix();
    let check = is_nullifier(&m, &s.k).map_err(err)?;
    let thetas = theta_grid(points);
    let deviations = symmetry_deviations(&s.k, &m, &thetas).map_err(err)?;
    let label = |i: usize| s.layout.as_ref().map_or(i.to_string(), |l| l.label(i));
    Ok(json!({
        "generator": e.display_with(label),
        "is_nullifier": check.is_nullifier,
        "residual": check.residual,
        "thetas": thetas,
        "deviations": deviations,
    })
    .to_string())
}

/// Invariant two-mode graphs of `½(ασ₀ + βσx + γσy + δσz)`.
pub fn two_mode_class_json(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<String, String> {
    let class = two_mode_invariant_class(alpha, beta, gamma, delta).map_err(err)?;
    let basis: Vec<Vec<[f64; 2]>> = class.basis.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect()).collect();
    let generator = gnl_core::nullifier::two_mode_generator(alpha, beta, gamma, delta).to_string();
    Ok(json!({"generator": generator, "dimension": class.dimension, "basis": basis}).to_string())
}

#[wasm_bindgen]
pub fn wire_graph(spins: usize, alpha: f64) -> Result<String, JsValue> {
    wire_graph_json(spins, alpha).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn symmetry_scan(state: &str, spins: usize, alpha: f64, generator: &str, points: usize) -> Result<String, JsValue> {
    symmetry_scan_json(state, spins, alpha, generator, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn two_mode_class(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<String, JsValue> {
    two_mode_class_json(alpha, beta, gamma, delta).map_err(|e| JsValue::from_str(&e))
}
