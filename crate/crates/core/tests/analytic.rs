use proptest::prelude::*;
use splitdrift::analytic::{
    classify_regime, clique_upper_bound, degree_pmf, expected_complete_subgraphs, moments,
    p_complete, stein_chen_bound,
};
use splitdrift::samplers::ModelParams;
use splitdrift::stats::exact_stationary_small_n;

fn params(n: usize, r: f64) -> ModelParams {
    ModelParams::new(n, r).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs()
    }
}

/// The Stein-Chen constant in its expanded form.
fn c_n_direct(n: f64, r: f64) -> f64 {
    n * (n - 1.0) * (n * n * r + 2.0 * n * r * r + n * r - 2.0 * r * r + 3.0 * r + 9.0)
        / (2.0 * (2.0 * r + 3.0) * (r + 3.0) * (r + 1.0) * (r + 1.0))
}

#[test]
fn stein_chen_constant_matches_expanded_form() {
    for n in [2usize, 3, 10, 100, 1000] {
        for r in [0.0, 1e-3, 0.5, 1.0, 10.0, 1e4] {
            let s = stein_chen_bound(&params(n, r)).unwrap();
            assert!(rel(s.c_n, c_n_direct(n as f64, r)) < 1e-12, "n={n} r={r}");
        }
    }
}

#[test]
fn stein_chen_reference_point() {
    let s = stein_chen_bound(&params(10, 100.0)).unwrap();
    assert!(rel(s.lambda, 90.0 / 202.0) < 1e-15);
    assert!(
        rel(s.bound, s.c_n) < 1e-15,
        "lambda < 1 keeps the full constant"
    );
}

#[test]
fn stein_chen_bound_shrinks_along_sparse_path() {
    let bounds: Vec<f64> = [10usize, 30, 100, 300, 1000, 3000]
        .iter()
        .map(|&n| {
            stein_chen_bound(&params(n, (n as f64).powf(1.5)))
                .unwrap()
                .bound
        })
        .collect();
    assert!(bounds.windows(2).all(|w| w[1] < w[0]), "{bounds:?}");
}

#[test]
fn closed_forms_match_exact_law_on_four_vertices() {
    for r in [0.1, 1.0, 10.0] {
        let p = params(4, r);
        let law = exact_stationary_small_n(&p).unwrap();
        let m = moments(&p).unwrap();
        assert!(rel(law.p_edge(0, 3), m.p_edge) < 1e-10);
        assert!(rel(law.edge_covariance((0, 1), (1, 2)), m.cov_shared) < 1e-10);
        assert!(rel(law.edge_covariance((0, 1), (2, 3)), m.cov_disjoint) < 1e-10);
        assert!(rel(law.edge_count_law().variance(), m.var_edges) < 1e-10);
        assert!(rel(law.p_complete(), p_complete(&p)) < 1e-10);
        let triangles = law.expectation(|g| {
            [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
                .iter()
                .filter(|&&(a, b, c)| g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c))
                .count() as f64
        });
        assert!(rel(triangles, expected_complete_subgraphs(&p, 3)) < 1e-10);
        let degree = law.expectation(|g| g.degree(2) as f64);
        assert!(rel(degree, m.mean_degree) < 1e-10);
        let var = law.expectation(|g| (g.degree(2) as f64 - m.mean_degree).powi(2));
        assert!(rel(var, m.var_degree) < 1e-10);
        let deg_law = degree_pmf(&p).unwrap();
        for k in 0..4 {
            let exact = law.expectation(|g| (g.degree(0) == k) as u8 as f64);
            assert!((exact - deg_law.prob(k)).abs() < 1e-10, "r={r} k={k}");
        }
    }
}

#[test]
fn clique_bound_tightens_with_tail() {
    let p = params(500, 2.0);
    let loose = clique_upper_bound(&p, 0.5).unwrap();
    let tight = clique_upper_bound(&p, 1e-6).unwrap();
    assert!(loose <= tight);
    assert!(tight <= 500);
}

proptest! {
    #[test]
    fn pmf_moments_agree_with_closed_forms(n in 2usize..300, r in 1e-3f64..1e3) {
        let p = params(n, r);
        let law = degree_pmf(&p).unwrap();
        let m = moments(&p).unwrap();
        prop_assert!((law.total() - 1.0).abs() < 1e-12);
        prop_assert!(rel(law.mean(), m.mean_degree) < 1e-8);
        prop_assert!(rel(law.variance(), m.var_degree) < 1e-8);
    }

    #[test]
    fn variance_identity_holds(n in 2usize..2000, r in 1e-4f64..1e4) {
        let m = moments(&params(n, r)).unwrap();
        let nf = n as f64;
        let rhs = 0.25 * (nf * m.var_degree + nf * (nf - 1.0) * m.cov_degree);
        prop_assert!(rel(m.var_edges, rhs) < 1e-10);
    }

    #[test]
    fn regime_is_monotone_in_r(n in 2usize..100_000, a in -8.0f64..12.0, b in -8.0f64..12.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let x = classify_regime(n, 10f64.powf(lo)).regime as u8;
        let y = classify_regime(n, 10f64.powf(hi)).regime as u8;
        prop_assert!(x <= y);
    }

    #[test]
    fn expected_counts_decrease_in_r(n in 3usize..200, k in 2usize..10, r in 0.0f64..50.0) {
        prop_assume!(k <= n);
        let a = expected_complete_subgraphs(&params(n, r), k);
        let b = expected_complete_subgraphs(&params(n, r + 1.0), k);
        prop_assert!(b < a);
    }
}
