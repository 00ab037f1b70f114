mod common;

use common::*;
use qlr_core::matcore::{anticommutator, expectation, pauli};
use qlr_core::sampler::{estimate_gap, measure_projective, sequential_exact, sequential_expectation};
use qlr_core::schemes::{TwoQubitScheme, DIAGONAL_N};
use qlr_core::{Complex64, DensityMatrix, HermitianObservable};
use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, FRAC_PI_8};

#[test]
fn sample_mean_converges_to_expectation() {
    let mut r = rng(51);
    for t in 0..20 {
        let n = 2 + t % 3;
        let rho = random_density(&mut r, vec![n]);
        let h = random_hermitian(&mut r, n);
        let rep = measure_projective(&rho, &h, 100_000, 1000 + t as u64).unwrap();
        let exact = expectation(&rho, h.matrix()).unwrap().re;
        assert!(rep.std_error > 0.0);
        assert!(
            (rep.mean - exact).abs() < 5.0 * rep.std_error,
            "pair {t}: mean {} exact {exact} se {}",
            rep.mean,
            rep.std_error
        );
    }
}

#[test]
fn sequential_products_are_order_symmetric() {
    let mut r = rng(52);
    for _ in 0..50 {
        let rho = random_density(&mut r, vec![2]);
        let (a, _) = random_pm1_qubit(&mut r);
        let (b, _) = random_pm1_qubit(&mut r);
        let half = 0.5 * expectation(&rho, &anticommutator(&a, &b).unwrap()).unwrap().re;
        assert!((sequential_exact(&rho, &a, &b).unwrap() - half).abs() < 1e-10);
        assert!((sequential_exact(&rho, &b, &a).unwrap() - half).abs() < 1e-10);
    }
}

#[test]
fn two_qubit_gap_estimates() {
    let x = pauli::x();
    let ns = pauli::along(DIAGONAL_N);
    let a = HermitianObservable::new(qlr_core::matcore::tensor(&x, &x)).unwrap();
    let b = HermitianObservable::new(qlr_core::matcore::tensor(&ns, &ns)).unwrap();
    for (k, alpha) in [0.0, FRAC_PI_8, FRAC_PI_6, FRAC_PI_4].into_iter().enumerate() {
        let rho = TwoQubitScheme::new(alpha, DIAGONAL_N).unwrap().state();
        let g = estimate_gap(&rho, &a, &b, 1_000_000, 60 + k as u64).unwrap();
        let target = Complex64::new(0.0, 2.0 * (2.0 * alpha).cos());
        let se = g.estimator.std_error;
        assert!((g.gap() - target).norm() <= 4.0 * se + 1e-12, "alpha {alpha}: {} vs {target}", g.gap());
    }
}

#[test]
fn maximally_mixed_random_pairs_estimate_zero() {
    let mut r = rng(53);
    for n in 2..=3 {
        let rho = DensityMatrix::maximally_mixed(vec![n]);
        let a = random_hermitian(&mut r, n);
        let b = random_hermitian(&mut r, n);
        let g = estimate_gap(&rho, &a, &b, 100_000, n as u64).unwrap();
        assert!(g.gap().norm() < 4.0 * g.estimator.std_error);
    }
}

#[test]
fn reports_are_bit_identical_per_seed() {
    let mut r = rng(54);
    let rho = random_density(&mut r, vec![3]);
    let a = random_hermitian(&mut r, 3);
    let b = random_hermitian(&mut r, 3);
    let first = sequential_expectation(&rho, &a, &b, 20_000, 99).unwrap();
    let again = sequential_expectation(&rho, &a, &b, 20_000, 99).unwrap();
    assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&again).unwrap());
    let g1 = estimate_gap(&rho, &a, &b, 20_000, 7).unwrap();
    let g2 = estimate_gap(&rho, &a, &b, 20_000, 7).unwrap();
    assert_eq!(g1, g2);
}
