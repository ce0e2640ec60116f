use proptest::prelude::*;
use splitdrift::genealogy::sample_kingman;
use splitdrift::graph::{read_edge_list, summarize, write_edge_list};
use splitdrift::samplers::{
    default_burn_in, sample_backward, sample_backward_edges, sample_ctmc, sample_forward,
    sample_forward_edges, substream, ModelParams,
};
use splitdrift::stats::{chi_square_gof, exact_stationary_small_n, SampleMoments};
use splitdrift::LabeledGraph;

fn params(n: usize, r: f64) -> ModelParams {
    ModelParams::new(n, r).unwrap()
}

fn state_histogram(n: usize, reps: u64, mut draw: impl FnMut(u64) -> LabeledGraph) -> Vec<u64> {
    let mut hist = vec![0u64; 1 << (n * (n - 1) / 2)];
    for j in 0..reps {
        hist[draw(j).state_code().unwrap() as usize] += 1;
    }
    hist
}

#[test]
fn forward_and_backward_match_exact_law_on_small_graphs() {
    for n in 2..=4 {
        for (i, r) in [0.1, 1.0, 10.0].into_iter().enumerate() {
            let p = params(n, r);
            let law = exact_stationary_small_n(&p).unwrap();
            let seed = (100 * n + i) as u64;
            let fwd = state_histogram(n, 20_000, |j| sample_forward(&p, &mut substream(seed, j)));
            let bwd = state_histogram(n, 20_000, |j| {
                sample_backward(&p, &mut substream(seed + 50, j))
            });
            let gf = chi_square_gof(&fwd, law.probs()).unwrap();
            let gb = chi_square_gof(&bwd, law.probs()).unwrap();
            assert!(gf.p_value > 1e-4, "forward n={n} r={r}: {gf:?}");
            assert!(gb.p_value > 1e-4, "backward n={n} r={r}: {gb:?}");
        }
    }
}

#[test]
fn chain_after_burn_in_matches_exact_law() {
    let p = params(3, 1.0);
    let law = exact_stationary_small_n(&p).unwrap();
    let events = default_burn_in(&p);
    let hist = state_histogram(3, 20_000, |j| {
        sample_ctmc(&p, events, &LabeledGraph::complete(3), &mut substream(7, j)).unwrap()
    });
    let g = chi_square_gof(&hist, law.probs()).unwrap();
    assert!(g.p_value > 1e-4, "{g:?}");
}

#[test]
fn chain_forgets_its_initial_graph() {
    let (n, r) = (12, 1.0);
    let p = params(n, r);
    let events = default_burn_in(&p);
    let want = (n * (n - 1)) as f64 / (2.0 * (1.0 + r));
    for (k, start) in [LabeledGraph::empty(n), LabeledGraph::complete(n)]
        .iter()
        .enumerate()
    {
        let xs: Vec<f64> = (0..3000u64)
            .map(|j| {
                sample_ctmc(&p, events, start, &mut substream(40 + k as u64, j))
                    .unwrap()
                    .edge_count() as f64
            })
            .collect();
        let m = SampleMoments::from_samples(&xs).unwrap();
        assert!(
            (m.mean - want).abs() < 4.0 * m.se_mean.unwrap(),
            "start {k}: {} vs {want}",
            m.mean
        );
    }
}

#[test]
fn edge_marginal_on_larger_graphs() {
    let (n, r) = (20, 2.0);
    let p = params(n, r);
    let reps = 4000u64;
    let mut per_pair = vec![0u64; n * (n - 1) / 2];
    for j in 0..reps {
        let g = sample_backward(&p, &mut substream(3, j));
        for (k, (a, b)) in (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .enumerate()
        {
            per_pair[k] += g.has_edge(a, b) as u64;
        }
    }
    let pooled = per_pair.iter().sum::<u64>() as f64 / (reps as f64 * per_pair.len() as f64);
    assert!((pooled - 1.0 / (1.0 + r)).abs() < 0.01, "pooled {pooled}");
    // Exchangeability: no single pair strays far from the common marginal.
    let se = (1.0 / 3.0 * 2.0 / 3.0 / reps as f64).sqrt();
    for &c in &per_pair {
        assert!((c as f64 / reps as f64 - 1.0 / 3.0).abs() < 5.0 * se);
    }
}

#[test]
fn same_stream_same_graph() {
    let p = params(40, 3.0);
    assert_eq!(
        sample_forward_edges(&p, &mut substream(5, 9)),
        sample_forward_edges(&p, &mut substream(5, 9))
    );
    assert_eq!(
        sample_backward_edges(&p, &mut substream(5, 9)),
        sample_backward_edges(&p, &mut substream(5, 9))
    );
}

#[test]
fn genealogy_epoch_and_branch_moments() {
    let reps = 40_000u64;
    let n = 6;
    let mut first_epoch = Vec::new();
    let mut length = Vec::new();
    let mut height = Vec::new();
    let mut pair = Vec::new();
    for j in 0..reps {
        let g = sample_kingman(n, &mut substream(11, j)).unwrap();
        first_epoch.push(g.epochs()[0].duration);
        length.push(g.total_branch_length());
        height.push(g.height());
        pair.push(g.pair_coalescence_time(1, 4).unwrap());
    }
    let harmonic: f64 = (1..n).map(|i| 1.0 / i as f64).sum();
    let harmonic2: f64 = (1..n).map(|i| 1.0 / (i * i) as f64).sum();
    let checks = [
        (first_epoch, 1.0 / 15.0, "first epoch"),
        (height, 2.0 * (1.0 - 1.0 / n as f64), "height"),
        (pair, 1.0, "pair coalescence"),
    ];
    for (xs, want, what) in checks {
        let m = SampleMoments::from_samples(&xs).unwrap();
        assert!(
            (m.mean - want).abs() < 4.0 * m.se_mean.unwrap(),
            "{what}: {} vs {want}",
            m.mean
        );
    }
    let m = SampleMoments::from_samples(&length).unwrap();
    assert!((m.mean - 2.0 * harmonic).abs() < 4.0 * m.se_mean.unwrap());
    let v = m.variance.unwrap();
    assert!(
        (v - 4.0 * harmonic2).abs() < 4.0 * m.se_variance.unwrap(),
        "Var L = {v}"
    );
}

#[test]
fn three_vertex_first_merge_time() {
    let xs: Vec<f64> = (0..40_000u64)
        .map(|j| sample_kingman(3, &mut substream(12, j)).unwrap().epochs()[0].duration)
        .collect();
    let m = SampleMoments::from_samples(&xs).unwrap();
    assert!((m.mean - 1.0 / 3.0).abs() < 4.0 * m.se_mean.unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_edge_lists_are_well_formed(n in 1usize..60, r in 0.0f64..20.0, seed in any::<u64>(), backward in any::<bool>()) {
        let p = params(n, r);
        let list = if backward {
            sample_backward_edges(&p, &mut substream(seed, 0))
        } else {
            sample_forward_edges(&p, &mut substream(seed, 0))
        };
        prop_assert_eq!(list.n, n);
        prop_assert!(list.edges.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(list.edges.iter().all(|&(a, b)| a < b && (b as usize) < n));
    }

    #[test]
    fn zero_rate_gives_complete_graph(n in 1usize..40, seed in any::<u64>()) {
        let p = params(n, 0.0);
        prop_assert_eq!(sample_forward(&p, &mut substream(seed, 0)), LabeledGraph::complete(n));
        prop_assert_eq!(sample_backward(&p, &mut substream(seed, 1)), LabeledGraph::complete(n));
    }

    #[test]
    fn summaries_are_consistent(n in 3usize..40, r in 0.0f64..5.0, seed in any::<u64>()) {
        let g = sample_backward(&params(n, r), &mut substream(seed, 0));
        let s = summarize(&g, 64, &[2, 3]).unwrap();
        prop_assert_eq!(s.degrees.iter().sum::<usize>(), 2 * s.edges);
        prop_assert!(s.num_components >= 1 && s.num_components <= n);
        prop_assert!(s.num_components + s.edges >= n);
        let kappa = s.clique_number.unwrap();
        prop_assert!(kappa >= 1 && kappa <= s.degrees.iter().max().unwrap() + 1);
        prop_assert_eq!(s.complete_counts[&2], s.edges as u64);
        prop_assert_eq!(s.complete_counts[&3] > 0, kappa >= 3);
    }

    #[test]
    fn sampled_graphs_roundtrip_through_edge_lists(n in 1usize..40, r in 0.0f64..5.0, seed in any::<u64>()) {
        let g = sample_forward(&params(n, r), &mut substream(seed, 0));
        let mut buf = Vec::new();
        write_edge_list(&mut buf, &g).unwrap();
        let back = read_edge_list(buf.as_slice()).unwrap().to_graph().unwrap();
        prop_assert_eq!(back, g);
    }
}
