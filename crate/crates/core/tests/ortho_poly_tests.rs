mod common;

use common::{horner, kesten_mckay_integral};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use theta_core::ortho_poly::{
    inner_product, kesten_mckay_density, q_eval, quadrature_rule, PolyInBasis,
};

/// Chebyshev polynomial of the second kind by its own recurrence;
/// `U_{-1} = 0`, `U_{-2} = -1`.
fn chebyshev_u(t: i64, z: f64) -> f64 {
    match t {
        -2 => -1.0,
        -1 => 0.0,
        _ => {
            let (mut prev, mut cur) = (0.0, 1.0);
            for _ in 0..t {
                (prev, cur) = (cur, 2.0 * z * cur - prev);
            }
            cur
        }
    }
}

#[test]
fn density_integrates_to_one() {
    for d in [3, 4, 10] {
        let total = kesten_mckay_integral(&|_| 1.0, d);
        assert!((total - 1.0).abs() < 1e-8, "d = {d}: {total}");
    }
}

#[test]
fn density_matches_the_oracle_formula() {
    assert!((kesten_mckay_density(0.0, 3).unwrap() - 4.0 / (3.0 * std::f64::consts::PI)).abs() < 1e-12);
    for d in [3, 5, 9] {
        assert_eq!(kesten_mckay_density(1.0, d).unwrap(), 0.0);
        assert_eq!(kesten_mckay_density(-1.0, d).unwrap(), 0.0);
    }
    assert!(kesten_mckay_density(1.0001, 3).is_err());
}

#[test]
fn q_matches_closed_chebyshev_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in [3usize, 4, 7] {
        let df = d as f64;
        for _ in 0..50 {
            let z: f64 = rng.random_range(-1.0..1.0);
            for t in 0..=8 {
                let closed = if t == 0 {
                    1.0
                } else {
                    ((df - 1.0) / df).sqrt() * chebyshev_u(t, z)
                        - chebyshev_u(t - 2, z) / (df * (df - 1.0)).sqrt()
                };
                assert!((q_eval(t as usize, z, d) - closed).abs() < 1e-10, "t={t} z={z} d={d}");
            }
        }
    }
}

#[test]
fn q_examples() {
    assert!((q_eval(1, 1.0, 3) - 2.0 * (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    assert!((q_eval(2, 0.0, 3) + 1.5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn orthonormality_against_the_integration_oracle() {
    for d in [3, 4] {
        for l in 0..=5 {
            for t in 0..=5 {
                let value = kesten_mckay_integral(&|z| q_eval(l, z, d) * q_eval(t, z, d), d);
                let delta = if l == t { 1.0 } else { 0.0 };
                assert!((value - delta).abs() < 1e-8, "d={d} l={l} t={t}: {value}");
            }
        }
    }
}

#[test]
fn orthonormality_grid_by_quadrature() {
    for d in [3, 4, 5, 10] {
        let rule = quadrature_rule(11, d).unwrap();
        for l in 0..=10 {
            for t in 0..=10 {
                let ip = inner_product(
                    &PolyInBasis::basis(d, l).unwrap(),
                    &PolyInBasis::basis(d, t).unwrap(),
                    &rule,
                )
                .unwrap();
                let delta = if l == t { 1.0 } else { 0.0 };
                assert!((ip - delta).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn first_jacobi_entry_against_oracle() {
    let d = 3;
    let expected = (d as f64).sqrt() / (2.0 * (d as f64 - 1.0).sqrt());
    let oracle = kesten_mckay_integral(&|z| q_eval(1, z, d) * z, d);
    assert!((oracle - expected).abs() < 1e-9);
    let rule = quadrature_rule(2, d).unwrap();
    let by_rule = rule.integrate(|z| q_eval(1, z, d) * z);
    assert!((by_rule - expected).abs() < 1e-12);
}

#[test]
fn quadrature_exact_for_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in [3, 5] {
        for m in 1..=8 {
            let rule = quadrature_rule(m, d).unwrap();
            for _ in 0..100 {
                let coeffs: Vec<f64> = (0..2 * m).map(|_| rng.random_range(-1.0..1.0)).collect();
                let u = |z: f64| horner(&coeffs, z);
                let exact = kesten_mckay_integral(&u, d);
                assert!((rule.integrate(u) - exact).abs() <= 1e-8, "m={m} d={d}");
            }
        }
    }
}

#[test]
fn nodes_interlace() {
    for d in [3, 4, 8] {
        for m in 1..=10 {
            let a = quadrature_rule(m, d).unwrap().nodes;
            let b = quadrature_rule(m + 1, d).unwrap().nodes;
            for i in 0..m {
                assert!(b[i] > a[i] && a[i] > b[i + 1], "d={d} m={m}");
            }
        }
    }
}

#[test]
fn leftmost_node_approaches_minus_one() {
    let r: Vec<f64> = [2, 4, 8, 16].iter().map(|&m| -quadrature_rule(m, 3).unwrap().leftmost()).collect();
    assert!(r.windows(2).all(|w| w[0] < w[1]));
    assert!(r.iter().all(|&x| x < 1.0));
}

#[test]
fn two_node_rule_closed_form() {
    let rule = quadrature_rule(2, 3).unwrap();
    let node = 0.5 * 1.5f64.sqrt();
    assert!((rule.nodes[0] - node).abs() < 1e-12 && (rule.nodes[1] + node).abs() < 1e-12);
}

proptest! {
    #[test]
    fn rules_are_probability_measures(m in 1usize..=20, d in 2usize..=30) {
        let rule = quadrature_rule(m, d).unwrap();
        prop_assert!(rule.weights.iter().all(|&w| w > 0.0));
        prop_assert!((rule.weights.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
        prop_assert!(rule.nodes.windows(2).all(|w| w[0] > w[1]));
        prop_assert!(rule.nodes.iter().all(|&r| r > -1.0 && r < 1.0));
    }

    #[test]
    fn nodes_are_roots(m in 1usize..=12, d in 3usize..=12) {
        let rule = quadrature_rule(m, d).unwrap();
        for &r in &rule.nodes {
            prop_assert!(q_eval(m, r, d).abs() < 1e-9);
        }
    }
}
