//! Seeded random instances and brute-force oracles for the acceptance suite.

use gnl_core::graph::{AdjacencyMatrix, ZMatrix};
use gnl_core::linalg::{c, spectral_norm, CMatrix, RMatrix};
use gnl_core::HermitianGenerator;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gauss(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn complex_gauss(rng: &mut impl Rng) -> Complex64 {
    c(gauss(rng), gauss(rng))
}

pub fn random_complex(rng: &mut impl Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gauss(rng))
}

pub fn random_symmetric(rng: &mut impl Rng, n: usize) -> CMatrix {
    let a = random_complex(rng, n, n);
    (&a + a.transpose()).scale(0.5)
}

pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> CMatrix {
    let a = random_complex(rng, n, n);
    (&a + a.adjoint()).scale(0.5)
}

pub fn random_real_symmetric(rng: &mut impl Rng, n: usize) -> RMatrix {
    let a = RMatrix::from_fn(n, n, |_, _| gauss(rng));
    (&a + a.transpose()) * 0.5
}

/// Random complex symmetric matrix rescaled to spectral norm `norm`.
pub fn symmetric_with_norm(rng: &mut impl Rng, n: usize, norm: f64) -> CMatrix {
    let a = random_symmetric(rng, n);
    let s = spectral_norm(&a);
    a.scale(norm / s)
}

pub fn random_k(rng: &mut impl Rng, n: usize, norm: f64) -> AdjacencyMatrix {
    AdjacencyMatrix::new(symmetric_with_norm(rng, n, norm)).unwrap()
}

pub fn random_z(rng: &mut impl Rng, n: usize) -> ZMatrix {
    let v = random_real_symmetric(rng, n);
    let b = RMatrix::from_fn(n, n, |_, _| gauss(rng));
    let u = &b * b.transpose() + RMatrix::identity(n, n) * 0.2;
    ZMatrix::new(CMatrix::from_fn(n, n, |i, j| c(v[(i, j)], u[(i, j)]))).unwrap()
}

/// Haar-ish unitary from the QR factor of a complex Gaussian matrix.
pub fn random_unitary(rng: &mut impl Rng, n: usize) -> CMatrix {
    random_complex(rng, n, n).qr().q()
}

pub fn random_orthogonal(rng: &mut impl Rng, n: usize) -> RMatrix {
    RMatrix::from_fn(n, n, |_, _| gauss(rng)).qr().q()
}

pub fn generator(m: CMatrix) -> HermitianGenerator {
    HermitianGenerator::new(m).unwrap()
}

/// Rank by Gaussian elimination with full pivoting.
pub fn rank(mut a: RMatrix, rel_tol: f64) -> usize {
    let (rows, cols) = a.shape();
    let scale = a.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return 0;
    }
    let mut r = 0;
    for _ in 0..rows.min(cols) {
        let mut best = (r, r, 0.0_f64);
        for i in r..rows {
            for j in r..cols {
                if a[(i, j)].abs() > best.2 {
                    best = (i, j, a[(i, j)].abs());
                }
            }
        }
        if best.2 <= rel_tol * scale {
            break;
        }
        a.swap_rows(r, best.0);
        a.swap_columns(r, best.1);
        for i in r + 1..rows {
            let f = a[(i, r)] / a[(r, r)];
            if f != 0.0 {
                for j in r..cols {
                    let v = a[(r, j)];
                    a[(i, j)] -= f * v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Dimension of `{M Hermitian : MK + (MK)ᵀ = 0}` from the rank of the
/// constraint map evaluated on a randomly perturbed spanning set.
pub fn brute_force_nullifier_dimension(k: &CMatrix, seed: u64) -> usize {
    let n = k.nrows();
    let mut rng = rng(seed);
    let mut spanning = Vec::new();
    for r in 0..n {
        for s in r..n {
            let mut x = CMatrix::zeros(n, n);
            x[(r, s)] += c(1.0, 0.0);
            x[(s, r)] += c(1.0, 0.0);
            spanning.push(x);
            if r != s {
                let mut y = CMatrix::zeros(n, n);
                y[(r, s)] = c(0.0, 1.0);
                y[(s, r)] = c(0.0, -1.0);
                spanning.push(y);
            }
        }
    }
    let perturbed: Vec<CMatrix> =
        spanning.iter().map(|b| b + random_hermitian(&mut rng, n).scale(0.05)).collect();
    let mut a = RMatrix::zeros(2 * n * n, perturbed.len());
    for (col, m) in perturbed.iter().enumerate() {
        let mk = m * k;
        let res = &mk + mk.transpose();
        for (idx, z) in res.iter().enumerate() {
            a[(2 * idx, col)] = z.re;
            a[(2 * idx + 1, col)] = z.im;
        }
    }
    n * n - rank(a, 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_known_matrices() {
        assert_eq!(rank(RMatrix::identity(4, 4), 1e-12), 4);
        assert_eq!(rank(RMatrix::zeros(3, 3), 1e-12), 0);
        let a = RMatrix::from_row_slice(3, 3, &[1.0, 2.0, 3.0, 2.0, 4.0, 6.0, 1.0, 0.0, 1.0]);
        assert_eq!(rank(a, 1e-12), 2);
    }

    #[test]
    fn brute_force_on_vacuum_counts_everything() {
        assert_eq!(brute_force_nullifier_dimension(&CMatrix::zeros(3, 3), 1), 9);
    }

    #[test]
    fn random_k_has_requested_norm() {
        let k = random_k(&mut rng(1), 4, 0.7);
        assert!((k.spectral_norm() - 0.7).abs() < 1e-12);
    }
}
