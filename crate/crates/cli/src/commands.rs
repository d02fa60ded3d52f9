use std::fmt::Write as _;

use gnl_core::fock::{nullifier_residual, spin_basis_view, state_from_k, JSON_AMP_EPS};
use gnl_core::graph::{format_weight, k_to_z, to_dot};
use gnl_core::io::{MatrixJson, NullifierBasisJson};
use gnl_core::linalg::CMatrix;
use gnl_core::nullifier::{is_nullifier, nullifier_space, theta_grid, two_mode_invariant_class, verify_symmetry};
use gnl_core::SchwingerExpression;
use serde::Serialize;
use serde_json::json;

use crate::config::Format;
use crate::error::{usage, CliError};
use crate::spec::BuiltState;

pub const SYMMETRY_TOL: f64 = 1e-9;
pub const FOCK_TOL: f64 = 1e-8;

pub struct Output {
    pub body: String,
    pub passed: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Self { body, passed: true }
    }
}

fn header(command: &str) -> String {
    format!("gnl-report v1\ncommand: {command}\n")
}

fn pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn no_dot(command: &str) -> CliError {
    usage(format!("--format dot is not available for {command}"))
}

fn matrix_rows(out: &mut String, m: &CMatrix) {
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format_weight(m[(i, j)])).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
}

pub fn state(s: &BuiltState, format: Format) -> Result<Output, CliError> {
    let body = match format {
        Format::Json => pretty(&MatrixJson::from_matrix(s.k.entries())),
        Format::Dot => to_dot(s.k.entries(), |i| s.label(i)),
        Format::Text => {
            let r = s.k.report();
            let mut out = header("state");
            let _ = writeln!(out, "state: {}", s.description);
            let _ = writeln!(out, "modes: {}", s.n());
            let _ = writeln!(out, "spectral norm: {:.6}", r.spectral_norm);
            let _ = writeln!(out, "symmetric defect: {:.2e}", r.symmetric_defect);
            match r.min_eig_u {
                Some(m) => writeln!(out, "min eig U: {m:.6}"),
                None => writeln!(out, "min eig U: undefined"),
            }
            .ok();
            let _ = writeln!(out, "K:");
            matrix_rows(&mut out, s.k.entries());
            out
        }
    };
    Ok(Output::ok(body))
}

pub fn nullifiers(s: &BuiltState, format: Format) -> Result<Output, CliError> {
    let basis = nullifier_space(&s.k);
    let report = NullifierBasisJson::new(&basis, |i| s.label(i));
    let body = match format {
        Format::Json => pretty(&report),
        Format::Dot => return Err(no_dot("nullifiers")),
        Format::Text => {
            let mut out = header("nullifiers");
            let _ = writeln!(out, "state: {}", s.description);
            let _ = writeln!(out, "modes: {}", s.n());
            let _ = writeln!(out, "dimension: {}", report.dimension);
            let _ = writeln!(out, "threshold: {:.3e}", report.threshold);
            let tail: Vec<String> = report.singular_value_tail.iter().map(|x| format!("{x:.3e}")).collect();
            let _ = writeln!(out, "singular value tail: {}", tail.join(" "));
            if report.borderline {
                let _ = writeln!(out, "warning: singular values near the threshold, dimension may be unstable");
            }
            for (i, e) in report.expressions.iter().enumerate() {
                let _ = writeln!(out, "N{i} = {e}");
            }
            out
        }
    };
    Ok(Output::ok(body))
}

#[derive(Debug, Serialize)]
struct CheckReport {
    state: String,
    modes: usize,
    generator: String,
    is_nullifier: bool,
    residual: f64,
    thetas: usize,
    symmetry_deviation: f64,
    cutoff: u32,
    fock_residual: f64,
    passed: bool,
}

pub fn check(
    s: &BuiltState,
    generator: &SchwingerExpression,
    cutoff: u32,
    thetas: usize,
    format: Format,
) -> Result<Output, CliError> {
    let m = generator.to_matrix();
    let algebraic = is_nullifier(&m, &s.k)?;
    let deviation = verify_symmetry(&s.k, &m, &theta_grid(thetas))?;
    let fock = nullifier_residual(&m, &s.k, cutoff)?;
    let passed = algebraic.is_nullifier && deviation <= SYMMETRY_TOL && fock <= FOCK_TOL;
    let report = CheckReport {
        state: s.description.clone(),
        modes: s.n(),
        generator: generator.display_with(|i| s.label(i)),
        is_nullifier: algebraic.is_nullifier,
        residual: algebraic.residual,
        thetas,
        symmetry_deviation: deviation,
        cutoff,
        fock_residual: fock,
        passed,
    };
    let body = match format {
        Format::Json => pretty(&report),
        Format::Dot => return Err(no_dot("check")),
        Format::Text => {
            let mut out = header("check");
            let _ = writeln!(out, "state: {}", report.state);
            let _ = writeln!(out, "generator: {}", report.generator);
            let verdict = if report.is_nullifier { "NULLIFIER" } else { "NOT a nullifier;" };
            let _ = writeln!(
                out,
                "{verdict} residual {:.2e}; symmetry dev {:.2e} ({} thetas); fock residual {:.2e} (cutoff {})",
                report.residual, report.symmetry_deviation, thetas, report.fock_residual, cutoff
            );
            let _ = writeln!(out, "result: {}", if passed { "PASS" } else { "FAIL" });
            out
        }
    };
    Ok(Output { body, passed })
}

pub fn twomode(coeffs: [f64; 4], format: Format) -> Result<Output, CliError> {
    let [a, b, g, d] = coeffs;
    let class = two_mode_invariant_class(a, b, g, d)?;
    let generator = gnl_core::nullifier::two_mode_generator(a, b, g, d).to_string();
    let basis: Vec<Vec<[f64; 2]>> = class.basis.iter().map(|v| v.iter().map(|z| [z.re, z.im]).collect()).collect();
    let body = match format {
        Format::Json => pretty(&json!({
            "generator": generator,
            "dimension": class.dimension,
            "basis": basis,
            "singular_values": class.singular_values,
        })),
        Format::Dot => return Err(no_dot("twomode")),
        Format::Text => {
            let mut out = header("twomode");
            let _ = writeln!(out, "generator: {generator}");
            let _ = writeln!(out, "dimension: {}", class.dimension);
            let _ = writeln!(out, "basis (k11, k12, k22):");
            for v in &class.basis {
                let parts: Vec<String> = v.iter().map(|z| format_weight(*z)).collect();
                let _ = writeln!(out, "  ({})", parts.join(", "));
            }
            let sv: Vec<String> = class.singular_values.iter().map(|x| format!("{x:.3e}")).collect();
            let _ = writeln!(out, "singular values: {}", sv.join(" "));
            out
        }
    };
    Ok(Output::ok(body))
}

pub fn oracle(
    s: &BuiltState,
    cutoff: u32,
    generator: Option<&SchwingerExpression>,
    spin_view: bool,
    limit: usize,
    format: Format,
) -> Result<Output, CliError> {
    let phi = state_from_k(&s.k, cutoff)?;
    let residual = generator.map(|g| nullifier_residual(&g.to_matrix(), &s.k, cutoff)).transpose()?;
    let passed = residual.is_none_or(|r| r <= FOCK_TOL);
    let view = if spin_view {
        let pairing = s.pairing.as_ref().ok_or_else(|| usage("--spin-view needs a state with a spin pairing"))?;
        Some(spin_basis_view(&phi, pairing)?)
    } else {
        None
    };
    let body = match format {
        Format::Json => {
            let spins = view.as_ref().map(|v| {
                v.amplitudes
                    .iter()
                    .filter(|(_, z)| z.norm() > JSON_AMP_EPS)
                    .map(|(labels, z)| json!({"spins": labels, "re": z.re, "im": z.im}))
                    .collect::<Vec<_>>()
            });
            pretty(&json!({
                "state": s.description,
                "fock": phi.to_json(),
                "sector_norms": phi.sector_norms(),
                "residual": residual,
                "spin_view": spins,
            }))
        }
        Format::Dot => return Err(no_dot("oracle")),
        Format::Text => {
            let mut out = header("oracle");
            let _ = writeln!(out, "state: {}", s.description);
            let _ = writeln!(out, "cutoff: {cutoff}");
            for (total, norm) in phi.sector_norms() {
                let _ = writeln!(out, "sector {total}: norm {norm:.6e}");
            }
            let mut amps: Vec<_> = phi.amplitudes().iter().filter(|(_, z)| z.norm() > JSON_AMP_EPS).collect();
            amps.sort_by(|x, y| y.1.norm().total_cmp(&x.1.norm()).then_with(|| x.0.cmp(y.0)));
            let _ = writeln!(out, "largest amplitudes ({} of {}):", amps.len().min(limit), amps.len());
            for (occ, z) in amps.iter().take(limit) {
                let _ = writeln!(out, "  {occ:?} {}", format_weight(**z));
            }
            if let Some(v) = &view {
                let _ = writeln!(out, "spin basis:");
                for (labels, z) in v.amplitudes.iter().filter(|(_, z)| z.norm() > JSON_AMP_EPS).take(limit) {
                    let ket: String = labels.iter().map(|l| l.to_string()).collect();
                    let _ = writeln!(out, "  {ket} {}", format_weight(*z));
                }
            }
            if let Some(r) = residual {
                let _ = writeln!(out, "fock residual {r:.2e}");
                let _ = writeln!(out, "result: {}", if passed { "PASS" } else { "FAIL" });
            }
            out
        }
    };
    Ok(Output { body, passed })
}

pub fn export(s: &BuiltState, format: Format) -> Result<Output, CliError> {
    let z = k_to_z(&s.k)?;
    let report = s.k.report();
    let body = match format {
        Format::Dot => to_dot(s.k.entries(), |i| s.label(i)),
        Format::Json => pretty(&json!({
            "state": s.description,
            "modes": s.n(),
            "k": MatrixJson::from_matrix(s.k.entries()),
            "z": MatrixJson::from_matrix(z.entries()),
            "report": report,
        })),
        Format::Text => {
            let mut out = header("export");
            let _ = writeln!(out, "state: {}", s.description);
            let _ = writeln!(out, "modes: {}", s.n());
            let _ = writeln!(out, "valid: {}", report.is_valid);
            let _ = writeln!(out, "K:");
            matrix_rows(&mut out, s.k.entries());
            let _ = writeln!(out, "Z:");
            matrix_rows(&mut out, z.entries());
            out
        }
    };
    Ok(Output::ok(body))
}
