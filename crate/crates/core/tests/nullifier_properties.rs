mod common;

use std::f64::consts::PI;

use common::*;
use gnl_core::fock::nullifier_residual;
use gnl_core::graph::{passive_transform, tms_k, AdjacencyMatrix};
use gnl_core::linalg::{c, identity, max_abs_diff, CMatrix, RMatrix};
use gnl_core::nullifier::{
    bipartite_k, bipartite_nullifier, is_nullifier, nullifier_space, sorted_svd, theta_grid,
    two_mode_invariant_class, verify_symmetry, NULL_TOL,
};
use gnl_core::states::{dual_rail_wire, tms_pair, WireLayout};
use gnl_core::HermitianGenerator;
use num_complex::Complex64;
use proptest::prelude::*;

/// A random Hermitian `D` commuting with `diag(σ)`: block-diagonal over equal singular values.
fn commuting_d(r: &mut impl rand::Rng, sigma: &[f64]) -> RMatrix {
    let k = sigma.len();
    let mut d = RMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            if (sigma[i] - sigma[j]).abs() < 1e-12 {
                let x = gauss(r);
                d[(i, j)] = x;
                d[(j, i)] = x;
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn space_is_sound(seed in any::<u64>(), n in 1usize..=5, norm in 0.0f64..0.95) {
        let k = random_k(&mut rng(seed), n, norm);
        let space = nullifier_space(&k);
        prop_assert_eq!(space.dimension, space.generators.len());
        for g in &space.generators {
            prop_assert!(is_nullifier(g, &k).unwrap().residual <= NULL_TOL);
        }
        for (i, a) in space.generators.iter().enumerate() {
            for (j, b) in space.generators.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!((a.inner(b) - expected).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn space_dimension_matches_brute_force(seed in any::<u64>(), n in 1usize..=4, norm in 0.1f64..0.95) {
        let k = random_k(&mut rng(seed), n, norm);
        let space = nullifier_space(&k);
        prop_assert_eq!(space.dimension, brute_force_nullifier_dimension(k.entries(), seed ^ 0x5eed));
    }

    #[test]
    fn structured_space_dimension_matches_brute_force(seed in any::<u64>(), n in 2usize..=4) {
        // A bipartite K built with passive symmetries has a nontrivial nullifier space.
        let mut r = rng(seed);
        let half = n / 2;
        let k0 = random_complex(&mut r, half, n - half).scale(0.2);
        let k = bipartite_k(&k0).unwrap();
        let w = random_unitary(&mut r, n);
        let k = passive_transform(&k, &w).unwrap();
        let space = nullifier_space(&k);
        prop_assert!(space.dimension >= 1);
        prop_assert_eq!(space.dimension, brute_force_nullifier_dimension(k.entries(), seed));
    }

    #[test]
    fn criterion_matches_exponentiated_symmetry(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let k = random_k(&mut r, n, 0.6);
        let grid = theta_grid(32);
        for g in nullifier_space(&k).generators {
            prop_assert!(verify_symmetry(&k, &g, &grid).unwrap() <= 1e-9);
        }
        let m = generator(random_hermitian(&mut r, n));
        let check = is_nullifier(&m, &k).unwrap();
        if !check.is_nullifier {
            prop_assert!(verify_symmetry(&k, &m, &grid).unwrap() > 10.0 * NULL_TOL);
        }
    }

    #[test]
    fn random_combinations_of_nullifiers_are_nullifiers(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let k = random_k(&mut r, n, 0.8);
        let space = nullifier_space(&k);
        let mut total = CMatrix::zeros(n, n);
        for g in &space.generators {
            total += g.entries().scale(gauss(&mut r));
        }
        prop_assert!(is_nullifier(&generator(total), &k).unwrap().is_nullifier);
    }

    #[test]
    fn failed_criterion_shows_in_fock_space(seed in any::<u64>()) {
        // ‖M|φ⟩‖ ≥ c₀‖sym(MK)‖_F/√2 from the two-photon sector; with ‖K‖ ≤ 0.8 this beats residual/4.
        let mut r = rng(seed);
        let norm = 0.8 * rand::Rng::gen::<f64>(&mut r);
        let k = random_k(&mut r, 2, norm);
        let m = generator(random_hermitian(&mut r, 2));
        let check = is_nullifier(&m, &k).unwrap();
        prop_assume!(!check.is_nullifier);
        let fock = nullifier_residual(&m, &k, 6).unwrap();
        prop_assert!(fock > check.residual / 4.0, "fock {fock} vs residual {}", check.residual);
    }

    #[test]
    fn bipartite_construction_nullifies(seed in any::<u64>(), n1 in 1usize..=4, n2 in 1usize..=4) {
        let mut r = rng(seed);
        let raw = random_complex(&mut r, n1, n2);
        let k0 = raw.scale(0.9 / gnl_core::linalg::spectral_norm(&raw));
        let (_, sigma, _) = sorted_svd(&k0);
        let d = commuting_d(&mut r, &sigma);
        let m = bipartite_nullifier(&k0, &d).unwrap();
        let k = bipartite_k(&k0).unwrap();
        prop_assert!(is_nullifier(&m, &k).unwrap().is_nullifier);
    }

    #[test]
    fn bipartite_degenerate_spectrum_admits_full_d(seed in any::<u64>(), size in 1usize..=4) {
        let mut r = rng(seed);
        let k0 = random_unitary(&mut r, size).scale(0.7);
        let d = random_real_symmetric(&mut r, size);
        let m = bipartite_nullifier(&k0, &d).unwrap();
        prop_assert!(is_nullifier(&m, &bipartite_k(&k0).unwrap()).unwrap().is_nullifier);
    }

    #[test]
    fn two_mode_class_members_pass(a in -2.0f64..2.0, b in -2.0f64..2.0, g in -2.0f64..2.0, d in -2.0f64..2.0,
                                   x in -1.0f64..1.0, y in -1.0f64..1.0) {
        prop_assume!(a.abs() + b.abs() + g.abs() + d.abs() > 1e-3);
        let class = two_mode_invariant_class(a, b, g, d).unwrap();
        for basis_vec in 0..class.dimension {
            let mut coeffs = vec![Complex64::new(0.0, 0.0); class.dimension];
            coeffs[basis_vec] = c(x, y);
            prop_assume!(x.abs() + y.abs() > 1e-3);
            let k = class.assemble(&coeffs, 0.5).unwrap();
            prop_assert!(is_nullifier(&class.generator, &k).unwrap().is_nullifier);
        }
    }
}

#[test]
fn pinned_dimensions_agree_with_brute_force() {
    let scalar = AdjacencyMatrix::new(identity(2).scale(0.3)).unwrap();
    let mut cases: Vec<(&str, AdjacencyMatrix, usize)> = vec![
        ("vacuum", AdjacencyMatrix::vacuum(2), 4),
        ("tms", tms_k(0.5).unwrap(), 1),
        ("scalar", scalar, 1),
        ("tms pair", tms_pair(0.5).unwrap(), 6),
    ];
    for n in [3, 4] {
        let layout = WireLayout::new(n, 0.5).unwrap();
        cases.push(("wire", dual_rail_wire(&layout).unwrap(), n * (2 * n - 1)));
    }
    for (name, k, expected) in cases {
        assert_eq!(brute_force_nullifier_dimension(k.entries(), 11), expected, "{name} oracle");
        let space = nullifier_space(&k);
        assert_eq!(space.dimension, expected, "{name} solver");
        assert!(!space.borderline, "{name}");
    }
}

#[test]
fn combined_beamsplitter_classes() {
    for theta in [0.0, PI / 6.0, PI / 3.0] {
        let class = two_mode_invariant_class(0.0, theta.cos(), theta.sin(), 0.0).unwrap();
        assert_eq!(class.dimension, 1);
        let [k11, k12, k22] = class.basis[0];
        assert!(k12.norm() < 1e-10);
        let expected = -(Complex64::new(0.0, 2.0 * theta)).exp() * k11;
        assert!((k22 - expected).norm() < 1e-10, "θ = {theta}");
    }
}

#[test]
fn self_inverse_bipartite_graph_via_svd() {
    let mut r = rng(5);
    for half in 1..=4 {
        let o = random_orthogonal(&mut r, half);
        let alpha = 0.4;
        let k0 = gnl_core::linalg::to_complex(&o).scale(f64::tanh(alpha));
        let (_, sigma, _) = sorted_svd(&k0);
        assert!(sigma.iter().all(|s| (s - f64::tanh(alpha)).abs() < 1e-12));
        let d = random_real_symmetric(&mut r, half);
        let m: HermitianGenerator = bipartite_nullifier(&k0, &d).unwrap();
        assert!(is_nullifier(&m, &bipartite_k(&k0).unwrap()).unwrap().is_nullifier);
    }
}

#[test]
fn bipartite_output_is_block_diagonal() {
    let mut r = rng(9);
    let k0 = random_complex(&mut r, 2, 3).scale(0.1);
    let (_, sigma, _) = sorted_svd(&k0);
    let m = bipartite_nullifier(&k0, &commuting_d(&mut r, &sigma)).unwrap();
    let e = m.entries();
    let off = e.view((0, 2), (2, 3)).iter().fold(0.0_f64, |acc, z| acc.max(z.norm()));
    assert!(off < 1e-14);
    assert!(max_abs_diff(&e.adjoint(), e) < 1e-14);
}
