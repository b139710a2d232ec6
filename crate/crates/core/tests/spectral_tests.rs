use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use theta_core::graph::{generate_config_model, named_graph, NamedGraph};
use theta_core::spectral::{bordered, bordered_psd_equivalent, is_psd, symmetric_eigenvalues, BORDERED_TOL};

fn symmetric(dim: usize, entries: &[f64]) -> DMatrix<f64> {
    let m = DMatrix::from_fn(dim, dim, |i, j| entries[i * dim + j]);
    (&m + m.transpose()) * 0.5
}

fn matrix_strategy(max_dim: usize) -> impl Strategy<Value = DMatrix<f64>> {
    (1..=max_dim).prop_flat_map(|dim| {
        proptest::collection::vec(-3.0f64..3.0, dim * dim).prop_map(move |e| symmetric(dim, &e))
    })
}

/// A bordered instance; about half are built near the PSD boundary so both
/// outcomes occur often.
fn bordered_strategy() -> impl Strategy<Value = (f64, DVector<f64>, DMatrix<f64>)> {
    (1usize..=20).prop_flat_map(|dim| {
        (
            0.1f64..4.0,
            proptest::collection::vec(-2.0f64..2.0, dim),
            proptest::collection::vec(-1.0f64..1.0, dim * dim),
            -0.5f64..0.5,
        )
            .prop_map(move |(b, v, g, shift)| {
                let v = DVector::from_vec(v);
                let g = DMatrix::from_vec(dim, dim, g);
                // X = vvᵀ/b + GGᵀ/dim + shift·I is PSD-adjacent to the Schur
                // boundary; the sign of `shift` and the spread of GGᵀ decide.
                let x = &v * v.transpose() / b + &g * g.transpose() / dim as f64
                    + DMatrix::identity(dim, dim) * shift;
                (b, v, (&x + x.transpose()) * 0.5)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn trace_equals_eigenvalue_sum(m in matrix_strategy(20)) {
        let s = symmetric_eigenvalues(&m).unwrap();
        let sum: f64 = s.eigenvalues.iter().sum();
        let scale = m.abs().sum().max(1.0);
        prop_assert!((sum - m.trace()).abs() <= 1e-8 * scale);
        prop_assert_eq!(s.eigenvalues.len(), m.nrows());
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(s.lambda_min, *s.eigenvalues.last().unwrap());
    }

    #[test]
    fn bordered_equivalence((b, v, x) in bordered_strategy()) {
        let schur = bordered_psd_equivalent(b, &v, &x).unwrap();
        let direct = is_psd(&bordered(b, &v, &x).unwrap(), BORDERED_TOL).unwrap();
        // Instances within rounding of the boundary can legitimately go
        // either way; everything else must agree.
        let reduced = &x - &v * v.transpose() / b;
        let margin = symmetric_eigenvalues(&((&reduced + reduced.transpose()) * 0.5)).unwrap().lambda_min;
        if margin.abs() > 1e-7 {
            prop_assert_eq!(schur, direct.psd, "margin {}", margin);
        }
    }
}

#[test]
fn bordered_equivalence_hits_both_outcomes() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let (mut yes, mut no) = (0, 0);
    for _ in 0..200 {
        let (b, v, x) = bordered_strategy().new_tree(&mut runner).unwrap().current();
        if bordered_psd_equivalent(b, &v, &x).unwrap() {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 20 && no > 20, "{yes} psd, {no} not");
}

#[test]
fn regular_graph_top_eigenvalue_is_degree() {
    let mut graphs = vec![
        named_graph(NamedGraph::Petersen).unwrap(),
        named_graph(NamedGraph::Complete(6)).unwrap(),
        named_graph(NamedGraph::CompleteBipartite(4)).unwrap(),
    ];
    graphs.extend((0..5).map(|s| generate_config_model(100, 4, s).unwrap()));
    for g in &graphs {
        let a = g.adjacency_matrix();
        let s = symmetric_eigenvalues(a).unwrap();
        assert!((s.lambda_max() - g.d() as f64).abs() < 1e-9);
        let ones = DVector::from_element(g.n(), 1.0);
        assert_eq!(a * &ones, &ones * g.d() as f64);
    }
}

#[test]
fn petersen_and_complete_spectra() {
    let p = symmetric_eigenvalues(named_graph(NamedGraph::Petersen).unwrap().adjacency_matrix()).unwrap();
    let expected = [3.0, 1.0, 1.0, 1.0, 1.0, 1.0, -2.0, -2.0, -2.0, -2.0];
    for (a, b) in p.eigenvalues.iter().zip(expected) {
        assert!((a - b).abs() < 1e-9);
    }
    assert_eq!(p.lambda_2, Some(p.eigenvalues[1]));
    let k4 = symmetric_eigenvalues(named_graph(NamedGraph::Complete(4)).unwrap().adjacency_matrix()).unwrap();
    for (a, b) in k4.eigenvalues.iter().zip([3.0, -1.0, -1.0, -1.0]) {
        assert!((a - b).abs() < 1e-9);
    }
}
