//! Gaussian pure states as complex graphs.
//!
//! A state on `n` qumodes is fixed (up to displacements) by a complex symmetric
//! `Z = V + iU` with `U ≻ 0`, or equivalently by the adjacency matrix
//! `K = (I + iZ)(I − iZ)⁻¹`, which is symmetric with spectral norm below one.
//! `K` is the matrix in the nullifier relation `(â − K â†)|φ⟩ = 0`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    self, c, identity, max_abs_real, min_eigenvalue, spectral_norm, symmetric_defect, symmetrize,
    CMatrix, RMatrix, I,
};

/// Absolute max-entry tolerance for symmetry checks.
pub const SYM_TOL: f64 = 1e-10;
/// States with `‖K‖ ≥ 1 − EDGE_TOL` are treated as infinitely squeezed.
pub const EDGE_TOL: f64 = 1e-9;
/// Unitarity tolerance for passive transformations.
pub const UNITARY_TOL: f64 = 1e-10;
/// Edges with modulus below this are omitted from graph exports.
pub const EDGE_DISPLAY_TOL: f64 = 1e-9;

/// `Z = V + iU` with `Z` symmetric and `U ≻ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZMatrix {
    entries: CMatrix,
}

impl ZMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_square(&entries)?;
        let defect = symmetric_defect(&entries);
        if defect > SYM_TOL {
            return Err(Error::NonSymmetric { defect });
        }
        let entries = symmetrize(&entries);
        let min_eig = min_eigenvalue(&entries.map(|z| z.im));
        if !(min_eig > 0.0) {
            return Err(Error::NonPositiveU { min_eig });
        }
        Ok(Self { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// `V = Re Z`
    pub fn real_part(&self) -> RMatrix {
        self.entries.map(|z| z.re)
    }

    /// `U = Im Z`
    pub fn imag_part(&self) -> RMatrix {
        self.entries.map(|z| z.im)
    }
}

/// The complex adjacency matrix `K` of a Gaussian pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix {
    entries: CMatrix,
}

impl AdjacencyMatrix {
    /// Validates symmetry and `‖K‖ < 1 − EDGE_TOL`, then stores the symmetrized matrix.
    pub fn new(entries: CMatrix) -> Result<Self> {
        check_square(&entries)?;
        let defect = symmetric_defect(&entries);
        if defect > SYM_TOL {
            return Err(Error::NonSymmetric { defect });
        }
        let entries = symmetrize(&entries);
        let norm = spectral_norm(&entries);
        if !(norm < 1.0 - EDGE_TOL) {
            return Err(Error::NormAtOrAboveOne { norm });
        }
        Ok(Self { entries })
    }

    /// Skips validation; used to feed deliberately broken matrices to checkers.
    #[cfg(test)]
    pub(crate) fn from_unchecked(entries: CMatrix) -> Self {
        Self { entries }
    }

    /// The vacuum on `n` modes (`K = 0`).
    pub fn vacuum(n: usize) -> Self {
        Self { entries: CMatrix::zeros(n, n) }
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn spectral_norm(&self) -> f64 {
        spectral_norm(&self.entries)
    }

    pub fn report(&self) -> ValidationReport {
        validate(&self.entries)
    }

    /// Graphviz rendering of the graph. Edge labels are the complex weights.
    pub fn to_dot(&self) -> String {
        to_dot(&self.entries, |i| i.to_string())
    }
}

impl std::ops::Index<(usize, usize)> for AdjacencyMatrix {
    type Output = num_complex::Complex64;

    fn index(&self, idx: (usize, usize)) -> &Self::Output {
        &self.entries[idx]
    }
}

/// Diagnostics for a candidate adjacency matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub symmetric_defect: f64,
    pub spectral_norm: f64,
    /// Smallest eigenvalue of `U` computed from `K`; `None` when `I + K` is singular.
    pub min_eig_u: Option<f64>,
    pub is_valid: bool,
    /// Whether `U ≻ 0` and `‖K‖ < 1` agree for this matrix.
    pub norm_positivity_agree: bool,
}

/// Checks a raw matrix against the adjacency-matrix invariants. Never fails.
pub fn validate(k: &CMatrix) -> ValidationReport {
    if !k.is_square() {
        return ValidationReport {
            symmetric_defect: f64::INFINITY,
            spectral_norm: f64::NAN,
            min_eig_u: None,
            is_valid: false,
            norm_positivity_agree: false,
        };
    }
    let sym = symmetric_defect(k);
    let norm = spectral_norm(k);
    let min_eig_u = u_from_k(k).ok().map(|u| min_eigenvalue(&u));
    let norm_positivity_agree = match min_eig_u {
        Some(m) => (m > 0.0) == (norm < 1.0),
        None => norm >= 1.0,
    };
    ValidationReport {
        symmetric_defect: sym,
        spectral_norm: norm,
        min_eig_u,
        is_valid: sym <= SYM_TOL && norm < 1.0 - EDGE_TOL,
        norm_positivity_agree,
    }
}

/// `K = (I + iZ)(I − iZ)⁻¹`
pub fn z_to_k(z: &ZMatrix) -> Result<AdjacencyMatrix> {
    let n = z.n();
    let iz = z.entries().map(|v| I * v);
    let plus = identity(n) + &iz;
    let minus = identity(n) - &iz;
    // The two factors commute, so the left solve gives the same matrix.
    let k = linalg::solve(&minus, &plus, "I - iZ")?;
    AdjacencyMatrix::new(symmetrize(&k))
}

/// `Z = i(I + K)⁻¹(I − K)`
pub fn k_to_z(k: &AdjacencyMatrix) -> Result<ZMatrix> {
    let norm = k.spectral_norm();
    if !(norm < 1.0) {
        return Err(Error::NormAtOrAboveOne { norm });
    }
    let n = k.n();
    let z = linalg::solve(&(identity(n) + k.entries()), &(identity(n) - k.entries()), "I + K")?;
    ZMatrix::new(symmetrize(&z.map(|v| I * v)))
}

/// `U = (I + K)⁻¹(I − KK*)(I + K*)⁻¹`, the imaginary part of `Z` written through `K`.
///
/// Accepts any square matrix so that invalid candidates can be diagnosed.
pub fn u_from_k(k: &CMatrix) -> Result<RMatrix> {
    check_square(k)?;
    let n = k.nrows();
    let kc = k.conjugate();
    let left = linalg::solve(&(identity(n) + k), &(identity(n) - k * &kc), "I + K")?;
    // left · (I + K*)⁻¹ = ((I + K*)⁻ᵀ leftᵀ)ᵀ
    let u = linalg::solve(&(identity(n) + &kc).transpose(), &left.transpose(), "I + K*")?.transpose();
    let u = linalg::hermitize(&u);
    Ok(u.map(|z| z.re))
}

/// `K' = e^{−iΘ} K e^{−iΘ}` with `Θ = diag(θ)`.
pub fn phase_shift(k: &AdjacencyMatrix, theta: &[f64]) -> Result<AdjacencyMatrix> {
    let n = k.n();
    if theta.len() != n {
        return Err(Error::ShapeMismatch { expected: n, got: theta.len() });
    }
    let phases: Vec<_> = theta.iter().map(|&t| (-I * t).exp()).collect();
    let shifted = CMatrix::from_fn(n, n, |i, j| phases[i] * k.entries()[(i, j)] * phases[j]);
    Ok(AdjacencyMatrix { entries: symmetrize(&shifted) })
}

/// `K' = W K Wᵀ` for a passive mode unitary `W`.
///
/// `W` is the single-particle matrix of the interferometer: a passive unitary
/// `Û` with `Û â Û† = Wᴴ â` maps the state with graph `K` to the one with graph `K'`.
pub fn passive_transform(k: &AdjacencyMatrix, w: &CMatrix) -> Result<AdjacencyMatrix> {
    if w.nrows() != k.n() {
        return Err(Error::ShapeMismatch { expected: k.n(), got: w.nrows() });
    }
    linalg::ensure_unitary(w, UNITARY_TOL)?;
    let out = w * k.entries() * w.transpose();
    Ok(AdjacencyMatrix { entries: symmetrize(&out) })
}

/// `K = tanh(αG)` via the eigendecomposition of the real symmetric `G`.
pub fn hgraph_k(g: &RMatrix, alpha: f64) -> Result<AdjacencyMatrix> {
    check_graph(g, alpha)?;
    let k = linalg::real_symmetric_function(g, |l| (alpha * l).tanh());
    AdjacencyMatrix::new(linalg::to_complex(&k))
}

/// `K = tanh(α)·G`, valid only for self-inverse `G`.
pub fn hgraph_k_self_inverse(g: &RMatrix, alpha: f64) -> Result<AdjacencyMatrix> {
    check_graph(g, alpha)?;
    let defect = self_inverse_defect(g);
    if defect > 1e-12 {
        return Err(Error::NotSelfInverse { defect });
    }
    AdjacencyMatrix::new(linalg::to_complex(&(g * alpha.tanh())))
}

/// `max |G² − I|`
pub fn self_inverse_defect(g: &RMatrix) -> f64 {
    let n = g.nrows();
    max_abs_real(&(g * g - RMatrix::identity(n, n)))
}

/// The two-mode squeezed state: zero diagonal, off-diagonal `tanh(α)`.
pub fn tms_k(alpha: f64) -> Result<AdjacencyMatrix> {
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    let t = c(alpha.tanh(), 0.0);
    let zero = c(0.0, 0.0);
    AdjacencyMatrix::new(CMatrix::from_row_slice(2, 2, &[zero, t, t, zero]))
}

fn check_square(m: &CMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch { expected: m.nrows(), got: m.ncols() });
    }
    Ok(())
}

fn check_graph(g: &RMatrix, alpha: f64) -> Result<()> {
    if !g.is_square() {
        return Err(Error::ShapeMismatch { expected: g.nrows(), got: g.ncols() });
    }
    let defect = max_abs_real(&(g - g.transpose()));
    if defect > SYM_TOL {
        return Err(Error::NonSymmetricG { defect });
    }
    if !(alpha > 0.0) {
        return Err(Error::NonPositiveAlpha(alpha));
    }
    Ok(())
}

/// Formats a float with `digits` significant digits, `%g` style.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let (mantissa, exp) = s.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        return format!("{m}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Renders a complex weight as `a+bi` with 6 significant digits per part.
pub fn format_weight(z: num_complex::Complex64) -> String {
    let re = format_significant(z.re, 6);
    let im = format_significant(z.im.abs(), 6);
    let sign = if z.im.is_sign_negative() && z.im != 0.0 { '-' } else { '+' };
    format!("{re}{sign}{im}i")
}

/// Graphviz export. Positive real edges are blue, negative real edges yellow,
/// genuinely complex edges dashed grey. Diagonal entries become self-loops.
pub fn to_dot(k: &CMatrix, label: impl Fn(usize) -> String) -> String {
    let n = k.nrows();
    let mut out = String::from("graph K {\n  node [shape=circle];\n");
    for i in 0..n {
        let _ = writeln!(out, "  {i} [label=\"{}\"];", label(i));
    }
    for i in 0..n {
        for j in i..n {
            let w = k[(i, j)];
            if w.norm() < EDGE_DISPLAY_TOL {
                continue;
            }
            let style = if w.im.abs() < EDGE_DISPLAY_TOL {
                if w.re < 0.0 {
                    "color=\"#d4a017\", penwidth=2"
                } else {
                    "color=\"#1f4e9c\", penwidth=2"
                }
            } else {
                "color=\"gray40\", style=dashed"
            };
            let _ = writeln!(out, "  {i} -- {j} [label=\"{}\", {style}];", format_weight(w));
        }
    }
    out.push_str("}\n");
    out
}
