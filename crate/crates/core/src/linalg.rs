//! Dense complex matrix helpers shared by the other modules.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dense complex matrix.
pub type CMatrix = DMatrix<Complex64>;
/// Dense real matrix.
pub type RMatrix = DMatrix<f64>;

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_real(m: &RMatrix) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

/// Max-entry distance between two matrices of the same shape.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch in max_abs_diff");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn symmetric_defect(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.transpose())
}

pub fn hermitian_defect(m: &CMatrix) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// `(M + Mᵀ)/2`
pub fn symmetrize(m: &CMatrix) -> CMatrix {
    (m + m.transpose()).scale(0.5)
}

/// `(M + Mᴴ)/2`
pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Largest singular value; zero for an empty matrix.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(0.0_f64, |acc, s| acc.max(*s))
}

/// `max |WᴴW − I|`
pub fn unitarity_defect(w: &CMatrix) -> f64 {
    if !w.is_square() {
        return f64::INFINITY;
    }
    max_abs_diff(&(w.adjoint() * w), &identity(w.nrows()))
}

pub fn ensure_unitary(w: &CMatrix, tol: f64) -> Result<()> {
    let defect = unitarity_defect(w);
    if defect > tol {
        return Err(Error::NonUnitary { defect });
    }
    Ok(())
}

/// Solves `A X = B` by LU with partial pivoting.
pub fn solve(a: &CMatrix, b: &CMatrix, what: &'static str) -> Result<CMatrix> {
    a.clone().lu().solve(b).ok_or(Error::SingularSolve(what))
}

/// `exp(−iθM)` for Hermitian `M`, via its eigendecomposition.
pub fn expm_hermitian(m: &CMatrix, theta: f64) -> CMatrix {
    let n = m.nrows();
    if n == 0 {
        return CMatrix::zeros(0, 0);
    }
    let eig = hermitize(m).symmetric_eigen();
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        eig.eigenvalues.iter().map(|&l| (-I * theta * l).exp()),
    ));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

/// Applies a scalar function to the spectrum of a real symmetric matrix.
pub fn real_symmetric_function(g: &RMatrix, f: impl Fn(f64) -> f64) -> RMatrix {
    let n = g.nrows();
    if n == 0 {
        return RMatrix::zeros(0, 0);
    }
    let sym = (g + g.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let d = RMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        n,
        eig.eigenvalues.iter().map(|&l| f(l)),
    ));
    &eig.eigenvectors * d * eig.eigenvectors.transpose()
}

/// Smallest eigenvalue of a real symmetric matrix.
pub fn min_eigenvalue(m: &RMatrix) -> f64 {
    if m.is_empty() {
        return f64::INFINITY;
    }
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigen()
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &l| acc.min(l))
}

pub fn to_complex(m: &RMatrix) -> CMatrix {
    m.map(|x| c(x, 0.0))
}

/// Block direct sum `A ⊕ B`.
pub fn direct_sum(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    let mut out = CMatrix::zeros(ra + rb, ca + cb);
    out.view_mut((0, 0), (ra, ca)).copy_from(a);
    out.view_mut((ra, ca), (rb, cb)).copy_from(b);
    out
}

/// Embeds a square matrix acting on `modes` into an `n`-mode identity.
pub fn embed_unitary(local: &CMatrix, modes: &[usize], n: usize) -> CMatrix {
    let mut out = identity(n);
    for (a, &ma) in modes.iter().enumerate() {
        for (b, &mb) in modes.iter().enumerate() {
            out[(ma, mb)] = local[(a, b)];
        }
    }
    out
}
