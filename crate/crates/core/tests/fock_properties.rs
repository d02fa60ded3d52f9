mod common;

use common::*;
use gnl_core::fock::{
    apply_quadratic, linear_nullifier_residual, nullifier_residual, spin_basis_view, state_from_k, FockVector,
    SpinLabel,
};
use gnl_core::graph::tms_k;
use gnl_core::linalg::{c, CMatrix};
use gnl_core::nullifier::{is_nullifier, nullifier_space};
use gnl_core::states::{tms_pair, tms_pair_spins};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn recursion_is_consistent_and_solves_linear_relation(seed in any::<u64>(), n in 1usize..=3, norm in 0.0f64..0.9) {
        let k = random_k(&mut rng(seed), n, norm);
        let phi = state_from_k(&k, 8).unwrap();
        prop_assert!(linear_nullifier_residual(&k, &phi) <= 1e-10);
        prop_assert!(phi.amplitudes().keys().all(|o| o.iter().sum::<u32>() % 2 == 0));
    }

    #[test]
    fn sectors_are_exact_under_truncation(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let k = random_k(&mut r, n, 0.7);
        let m = generator(random_hermitian(&mut r, n));
        let low = state_from_k(&k, 4).unwrap();
        let high = state_from_k(&k, 6).unwrap();
        let vac = vec![0; n];
        let out_low = apply_quadratic(&m, &low).unwrap().scaled(Complex64::new(1.0, 0.0) / low.amplitude(&vac));
        let out_high = apply_quadratic(&m, &high).unwrap().scaled(Complex64::new(1.0, 0.0) / high.amplitude(&vac));
        for (occ, z) in out_low.amplitudes() {
            prop_assert!((z - out_high.amplitude(occ)).norm() < 1e-10);
        }
    }

    #[test]
    fn quadratic_action_is_linear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let m = generator(random_hermitian(&mut r, 3));
        let a = state_from_k(&random_k(&mut r, 3, 0.5), 4).unwrap();
        let b = state_from_k(&random_k(&mut r, 3, 0.5), 4).unwrap();
        let (x, y) = (complex_gauss(&mut r), complex_gauss(&mut r));
        let mut combo = a.scaled(x);
        for (o, z) in b.amplitudes() {
            combo.add(o.clone(), z * y);
        }
        let lhs = apply_quadratic(&m, &combo).unwrap();
        let ma = apply_quadratic(&m, &a).unwrap().scaled(x);
        let mb = apply_quadratic(&m, &b).unwrap().scaled(y);
        let mut rhs = ma;
        for (o, z) in mb.amplitudes() {
            rhs.add(o.clone(), *z);
        }
        prop_assert!(lhs.sub(&rhs).norm() < 1e-12);
    }
}

#[test]
fn oracle_agrees_with_algebraic_criterion() {
    let mut r = rng(2024);
    let mut trials = 0;
    for n in [2, 3] {
        for t in 0..25 {
            let k = random_k(&mut r, n, 0.3 + 0.5 * (t as f64 / 25.0));
            let m = if t % 2 == 0 {
                let space = nullifier_space(&k);
                let mut total = CMatrix::zeros(n, n);
                for g in &space.generators {
                    total += g.entries().scale(gauss(&mut r));
                }
                generator(total)
            } else {
                generator(random_hermitian(&mut r, n))
            };
            let algebraic = is_nullifier(&m, &k).unwrap().is_nullifier;
            let numeric = nullifier_residual(&m, &k, 8).unwrap() <= 1e-8;
            assert_eq!(algebraic, numeric, "n = {n}, trial {t}");
            trials += 1;
        }
    }
    assert_eq!(trials, 50);
}

#[test]
fn tms_amplitudes_follow_the_squeezing_law() {
    // |TMS(r)⟩ = Σ tanhⁿ(r)/cosh(r) |n,n⟩; the graph parameter α plays the role of r.
    for alpha in [0.2, 0.5, 0.9] {
        let phi = state_from_k(&tms_k(alpha).unwrap(), 140).unwrap();
        let t = f64::tanh(alpha);
        for n in 0..=8u32 {
            let expected = t.powi(n as i32) / f64::cosh(alpha);
            assert!((phi.amplitude(&[n, n]) - c(expected, 0.0)).norm() < 1e-10, "α = {alpha}, n = {n}");
        }
        let short = state_from_k(&tms_k(alpha).unwrap(), 12).unwrap();
        for n in 1..=6u32 {
            let ratio = short.amplitude(&[n, n]) / short.amplitude(&[n - 1, n - 1]);
            assert!((ratio - c(t, 0.0)).norm() < 1e-10);
        }
    }
}

#[test]
fn tms_pair_is_maximally_entangled_per_spin_sector() {
    let alpha = 0.5f64;
    let phi = state_from_k(&tms_pair(alpha).unwrap(), 12).unwrap();
    let view = spin_basis_view(&phi, &tms_pair_spins()).unwrap();
    let mut by_s: std::collections::BTreeMap<u32, Vec<Complex64>> = Default::default();
    for (labels, z) in &view.amplitudes {
        let (a, b) = (labels[0], labels[1]);
        assert_eq!(a, b, "spins A and B must carry identical labels");
        assert!(a.twice_m.unsigned_abs() <= a.twice_s);
        by_s.entry(a.twice_s).or_default().push(*z);
    }
    let t = f64::tanh(alpha);
    let norm = phi.amplitude(&[0, 0, 0, 0]).re;
    for (twice_s, amps) in by_s {
        assert_eq!(amps.len() as u32, twice_s + 1);
        for z in &amps {
            assert!((z - amps[0]).norm() < 1e-10);
            assert!((z.re / norm - t.powi(twice_s as i32)).abs() < 1e-10);
        }
    }
}

#[test]
fn vacuum_spin_view() {
    let view = spin_basis_view(&FockVector::basis(&[0, 0, 0, 0], 2), &tms_pair_spins()).unwrap();
    let zero = SpinLabel { twice_s: 0, twice_m: 0 };
    assert_eq!(view.amplitudes.get(&vec![zero, zero]), Some(&c(1.0, 0.0)));
}
