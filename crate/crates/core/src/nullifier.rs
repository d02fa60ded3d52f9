//! Schwinger nullifiers: the `MK + (MK)ᵀ = 0` criterion, the full nullifier
//! space of a state, the bipartite SVD construction, two-mode classes and
//! exponentiated symmetry checks.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::AdjacencyMatrix;
use crate::linalg::{self, c, direct_sum, max_abs, symmetrize, CMatrix, RMatrix, I};
use crate::schwinger::{Axis, HermitianGenerator, SchwingerExpression, SchwingerTerm};

/// Residual threshold of the nullifier criterion.
pub const NULL_TOL: f64 = 1e-9;
/// Relative singular-value threshold for kernel solves.
pub const KERNEL_REL_TOL: f64 = 1e-10;
/// Tie window for the canonical basis ordering.
const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullifierCheck {
    pub is_nullifier: bool,
    pub residual: f64,
}

/// `max |MK + (MK)ᵀ|`
pub fn nullifier_residual_matrix(m: &CMatrix, k: &CMatrix) -> f64 {
    let mk = m * k;
    max_abs(&(&mk + mk.transpose()))
}

pub fn is_nullifier(m: &HermitianGenerator, k: &AdjacencyMatrix) -> Result<NullifierCheck> {
    if m.n() != k.n() {
        return Err(Error::ShapeMismatch { expected: k.n(), got: m.n() });
    }
    let residual = nullifier_residual_matrix(m.entries(), k.entries());
    Ok(NullifierCheck { is_nullifier: residual <= NULL_TOL, residual })
}

/// Orthonormal real basis of a subspace of Hermitian matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct NullifierBasis {
    pub generators: Vec<HermitianGenerator>,
    pub dimension: usize,
    /// All singular values of the constraint map, descending.
    pub singular_values: Vec<f64>,
    pub threshold: f64,
    /// Set when some singular value lies within a factor 10 of the threshold.
    pub borderline: bool,
}

impl NullifierBasis {
    /// The smallest singular values: the kernel part plus up to two above it.
    pub fn singular_value_tail(&self) -> &[f64] {
        let keep = (self.dimension + 2).min(self.singular_values.len());
        &self.singular_values[self.singular_values.len() - keep..]
    }

    pub fn expressions(&self) -> Vec<SchwingerExpression> {
        self.generators.iter().map(|g| g.to_expression()).collect()
    }
}

/// Orthonormal basis of `n×n` Hermitian matrices under `Re tr(AB)`:
/// `E_ii`, then for each `r<s` the pair `(E_rs+E_sr)/√2`, `σy^{(r,s)}/√2`.
pub fn hermitian_basis(n: usize) -> Vec<CMatrix> {
    let mut basis = Vec::with_capacity(n * n);
    for i in 0..n {
        let mut e = CMatrix::zeros(n, n);
        e[(i, i)] = c(1.0, 0.0);
        basis.push(e);
    }
    for r in 0..n {
        for s in r + 1..n {
            let mut x = CMatrix::zeros(n, n);
            x[(r, s)] = c(FRAC_1_SQRT_2, 0.0);
            x[(s, r)] = c(FRAC_1_SQRT_2, 0.0);
            basis.push(x);
            let mut y = CMatrix::zeros(n, n);
            y[(r, s)] = c(0.0, -FRAC_1_SQRT_2);
            y[(s, r)] = c(0.0, FRAC_1_SQRT_2);
            basis.push(y);
        }
    }
    basis
}

/// Real coordinates of a Hermitian matrix in `hermitian_basis(n)`.
pub fn hermitian_coordinates(m: &CMatrix) -> DVector<f64> {
    let n = m.nrows();
    let basis = hermitian_basis(n);
    DVector::from_iterator(
        n * n,
        basis.iter().map(|b| (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (b[(i, j)] * m[(j, i)]).re).sum()),
    )
}

fn from_coordinates(coords: &[f64], basis: &[CMatrix]) -> CMatrix {
    let n = basis.first().map_or(0, |b| b.nrows());
    coords.iter().zip(basis).fold(CMatrix::zeros(n, n), |acc, (&x, b)| acc + b.scale(x))
}

/// The real matrix of `M ↦ ½(MK + (MK)ᵀ)` in Hermitian coordinates:
/// one column per basis element, rows are `Re` then `Im` of each upper-triangle entry.
pub fn constraint_matrix(k: &CMatrix) -> RMatrix {
    let n = k.nrows();
    let basis = hermitian_basis(n);
    let mut a = RMatrix::zeros(n * (n + 1), n * n);
    for (col, b) in basis.iter().enumerate() {
        let s = symmetrize(&(b * k));
        let mut row = 0;
        for i in 0..n {
            for j in i..n {
                a[(row, col)] = s[(i, j)].re;
                a[(row + 1, col)] = s[(i, j)].im;
                row += 2;
            }
        }
    }
    a
}

/// The space of all Hermitian `M` with `MK + (MK)ᵀ = 0`.
pub fn nullifier_space(k: &AdjacencyMatrix) -> NullifierBasis {
    let n = k.n();
    let a = constraint_matrix(k.entries());
    let dim = n * n;
    if dim == 0 {
        return NullifierBasis {
            generators: Vec::new(),
            dimension: 0,
            singular_values: Vec::new(),
            threshold: 0.0,
            borderline: false,
        };
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let singular_values: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let sigma_max = singular_values.first().copied().unwrap_or(0.0);
    let threshold = KERNEL_REL_TOL * sigma_max;
    let borderline =
        sigma_max > 0.0 && singular_values.iter().any(|&s| s >= threshold / 10.0 && s <= threshold * 10.0);
    let kernel: Vec<DVector<f64>> = order
        .iter()
        .filter(|&&i| sigma_max == 0.0 || svd.singular_values[i] < threshold)
        .map(|&i| v_t.row(i).transpose())
        .collect();
    let canonical = canonical_real_basis(&kernel, dim);
    let basis = hermitian_basis(n);
    let generators = canonical
        .iter()
        .map(|v| HermitianGenerator::new(from_coordinates(v.as_slice(), &basis)).expect("basis combination is Hermitian"))
        .collect::<Vec<_>>();
    NullifierBasis { dimension: generators.len(), generators, singular_values, threshold, borderline }
}

/// Reorders an orthonormal set into a reproducible basis of the same span.
///
/// Repeatedly takes the coordinate axis with the largest remaining projection
/// (lowest index on ties), normalizes its projection and removes it.
pub fn canonical_real_basis(vectors: &[DVector<f64>], dim: usize) -> Vec<DVector<f64>> {
    let mut proj = DMatrix::<f64>::zeros(dim, dim);
    for v in vectors {
        proj += v * v.transpose();
    }
    let mut out = Vec::with_capacity(vectors.len());
    for _ in 0..vectors.len() {
        let mut best = 0;
        for k in 1..dim {
            if proj[(k, k)] > proj[(best, best)] + TIE_TOL {
                best = k;
            }
        }
        let weight = proj[(best, best)];
        if weight <= TIE_TOL {
            break;
        }
        let u = proj.column(best) / weight.sqrt();
        proj -= &u * u.transpose();
        out.push(u);
    }
    out
}

/// Complex analogue of [`canonical_real_basis`]; each returned vector has a
/// real positive entry at its pivot.
pub fn canonical_complex_basis(vectors: &[DVector<Complex64>], dim: usize) -> Vec<DVector<Complex64>> {
    let mut proj = DMatrix::<Complex64>::zeros(dim, dim);
    for v in vectors {
        proj += v * v.adjoint();
    }
    let mut out = Vec::with_capacity(vectors.len());
    for _ in 0..vectors.len() {
        let mut best = 0;
        for k in 1..dim {
            if proj[(k, k)].re > proj[(best, best)].re + TIE_TOL {
                best = k;
            }
        }
        let weight = proj[(best, best)].re;
        if weight <= TIE_TOL {
            break;
        }
        let u = proj.column(best).map(|z| z / weight.sqrt());
        proj -= &u * u.adjoint();
        out.push(u);
    }
    out
}

/// `K = [[0, K0], [K0ᵀ, 0]]`
pub fn bipartite_k(k0: &CMatrix) -> Result<AdjacencyMatrix> {
    let (n1, n2) = k0.shape();
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidBlockShape(format!("K0 is {n1}×{n2}")));
    }
    let mut k = CMatrix::zeros(n1 + n2, n1 + n2);
    k.view_mut((0, n1), (n1, n2)).copy_from(k0);
    k.view_mut((n1, 0), (n2, n1)).copy_from(&k0.transpose());
    AdjacencyMatrix::new(k)
}

/// Thin SVD `K0 = UΣVᴴ` with singular values in descending order.
pub fn sorted_svd(k0: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let svd = k0.clone().svd(true, true);
    let u = svd.u.expect("left singular vectors requested");
    let v_t = svd.v_t.expect("right singular vectors requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&x, &y| svd.singular_values[y].total_cmp(&svd.singular_values[x]));
    let k = order.len();
    let us = CMatrix::from_fn(u.nrows(), k, |i, j| u[(i, order[j])]);
    let vs = CMatrix::from_fn(v_t.ncols(), k, |i, j| v_t[(order[j], i)].conj());
    let sigma = order.iter().map(|&i| svd.singular_values[i]).collect();
    (us, sigma, vs)
}

/// Nullifier of a bipartite state: `M = (U ⊕ V*)(D ⊕ −D)(Uᴴ ⊕ Vᵀ)`.
///
/// `D` must be real symmetric, `min(n1, n2)` square and commute with `Σ`.
pub fn bipartite_nullifier(k0: &CMatrix, d: &RMatrix) -> Result<HermitianGenerator> {
    bipartite_k(k0)?;
    let (u, sigma, v) = sorted_svd(k0);
    let k = sigma.len();
    if d.shape() != (k, k) {
        return Err(Error::InvalidBlockShape(format!("D is {}×{}, expected {k}×{k}", d.nrows(), d.ncols())));
    }
    let asym = linalg::max_abs_real(&(d - d.transpose()));
    if asym > crate::graph::SYM_TOL {
        return Err(Error::InvalidBlockShape(format!("D is not symmetric (defect {asym:.3e})")));
    }
    let s = RMatrix::from_diagonal(&DVector::from_vec(sigma));
    let defect = linalg::max_abs_real(&(d * &s - &s * d));
    if defect > NULL_TOL {
        return Err(Error::NonCommutingD { defect });
    }
    let dc = linalg::to_complex(d);
    let left = direct_sum(&u, &v.conjugate());
    let middle = direct_sum(&dc, &(-&dc));
    let right = direct_sum(&u.adjoint(), &v.transpose());
    HermitianGenerator::new(left * middle * right)
}

/// Kernel of the two-mode constraint system for `M = ½(ασ₀ + βσx + γσy + δσz)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeClass {
    /// `(k₁₁, k₁₂, k₂₂)` vectors, orthonormal, each with a real positive pivot.
    pub basis: Vec<[Complex64; 3]>,
    pub dimension: usize,
    pub generator: HermitianGenerator,
    pub singular_values: Vec<f64>,
}

impl TwoModeClass {
    /// Combines basis vectors and rescales to the requested spectral norm.
    pub fn assemble(&self, coeffs: &[Complex64], target_norm: f64) -> Result<AdjacencyMatrix> {
        if coeffs.len() != self.dimension {
            return Err(Error::ShapeMismatch { expected: self.dimension, got: coeffs.len() });
        }
        let mut v = [c(0.0, 0.0); 3];
        for (b, &x) in self.basis.iter().zip(coeffs) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += x * bi;
            }
        }
        let k = CMatrix::from_row_slice(2, 2, &[v[0], v[1], v[1], v[2]]);
        let norm = linalg::spectral_norm(&k);
        if norm == 0.0 {
            return Ok(AdjacencyMatrix::vacuum(2));
        }
        AdjacencyMatrix::new(k.scale(target_norm / norm))
    }
}

/// `½(ασ₀ + βσx + γσy + δσz)` on two modes.
pub fn two_mode_generator(alpha: f64, beta: f64, gamma: f64, delta: f64) -> SchwingerExpression {
    let terms = [(Axis::Zero, alpha), (Axis::X, beta), (Axis::Y, gamma), (Axis::Z, delta)]
        .into_iter()
        .filter(|(_, k)| *k != 0.0)
        .map(|(a, k)| SchwingerTerm::new(a, 0, 1, k))
        .collect();
    SchwingerExpression::new(2, terms).expect("two-mode terms are valid")
}

pub fn two_mode_invariant_class(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<TwoModeClass> {
    if [alpha, beta, gamma, delta].iter().all(|&x| x == 0.0) {
        return Err(Error::AllZeroCoefficients);
    }
    let m11 = c(alpha + delta, 0.0);
    let m12 = c(beta, -gamma);
    let m21 = c(beta, gamma);
    let m22 = c(alpha - delta, 0.0);
    let zero = c(0.0, 0.0);
    let a = CMatrix::from_row_slice(3, 3, &[m11, m12, zero, zero, m21, m22, m21, c(2.0 * alpha, 0.0), m12]);
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().fold(0.0_f64, |x, &s| x.max(s));
    let threshold = KERNEL_REL_TOL * sigma_max;
    let kernel: Vec<DVector<Complex64>> = (0..3)
        .filter(|&i| svd.singular_values[i] < threshold)
        .map(|i| v_t.row(i).adjoint())
        .collect();
    let basis: Vec<[Complex64; 3]> = canonical_complex_basis(&kernel, 3).iter().map(|v| [v[0], v[1], v[2]]).collect();
    let mut singular_values: Vec<f64> = svd.singular_values.iter().copied().collect();
    singular_values.sort_by(|x, y| y.total_cmp(x));
    Ok(TwoModeClass {
        dimension: basis.len(),
        basis,
        generator: two_mode_generator(alpha, beta, gamma, delta).to_matrix(),
        singular_values,
    })
}

/// `max |W K Wᵀ − K|` for `W = exp(−iθM)` at each θ.
pub fn symmetry_deviations(k: &AdjacencyMatrix, m: &HermitianGenerator, thetas: &[f64]) -> Result<Vec<f64>> {
    if m.n() != k.n() {
        return Err(Error::ShapeMismatch { expected: k.n(), got: m.n() });
    }
    let eig = linalg::hermitize(m.entries()).symmetric_eigen();
    let n = k.n();
    Ok(thetas
        .iter()
        .map(|&theta| {
            let phases = CMatrix::from_diagonal(&DVector::from_iterator(
                n,
                eig.eigenvalues.iter().map(|&l| (-I * theta * l).exp()),
            ));
            let w = &eig.eigenvectors * phases * eig.eigenvectors.adjoint();
            linalg::max_abs_diff(&(&w * k.entries() * w.transpose()), k.entries())
        })
        .collect())
}

/// Largest deviation over the grid.
pub fn verify_symmetry(k: &AdjacencyMatrix, m: &HermitianGenerator, thetas: &[f64]) -> Result<f64> {
    Ok(symmetry_deviations(k, m, thetas)?.into_iter().fold(0.0, f64::max))
}

/// `points` equally spaced angles in `[0, 2π)`.
pub fn theta_grid(points: usize) -> Vec<f64> {
    (0..points).map(|i| 2.0 * PI * i as f64 / points as f64).collect()
}
