use rand::Rng;
use rand_distr::{Distribution, Exp};

use super::ModelParams;
use crate::genealogy::{sample_kingman, Genealogy};
use crate::graph::{EdgeList, LabeledGraph};

/// Backward construction, returned as a sparse edge list.
///
/// Draws a Kingman genealogy, then lets removal marks fall at rate `r` along
/// the lineage of every pair of blocks. A pair of vertices is an edge iff its
/// lineage, from the present back to the merge of its two blocks, carries no
/// mark.
pub fn sample_backward_edges<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> EdgeList {
    let genealogy = sample_kingman(params.n(), rng).expect("n >= 1 by construction");
    sample_backward_from(&genealogy, params.r(), rng)
}

pub fn sample_backward<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> LabeledGraph {
    sample_backward_edges(params, rng)
        .to_graph()
        .expect("sampler emits valid edges")
}

/// Places removal marks on the pair lineages of a given genealogy.
///
/// The genealogy is walked from its root towards the present. Undoing merge
/// `(a, b)` at time `s` (measured from the root) creates the lineage of the
/// pair `{a, b}` and one lineage `{b, y}` for every block `y` whose lineage
/// with `a` is still unmarked; lineages already marked have no unmarked
/// descendants and are dropped. Each new lineage gets an exponential time to
/// its first mark, and pairs whose first mark lies beyond the present are
/// the edges.
pub fn sample_backward_from<R: Rng + ?Sized>(
    genealogy: &Genealogy,
    r: f64,
    rng: &mut R,
) -> EdgeList {
    let n = genealogy.n();
    let epochs = genealogy.epochs();
    if n == 1 {
        return EdgeList::new(1, Vec::new());
    }

    let mut merge_times = Vec::with_capacity(epochs.len());
    let mut acc = 0.0;
    for e in epochs {
        acc += e.duration;
        merge_times.push(acc);
    }
    let present = acc;

    let marks = (r > 0.0).then(|| Exp::new(r).expect("positive rate"));
    let first_mark = |from: f64, rng: &mut R| match &marks {
        Some(exp) => from + exp.sample(rng),
        None => f64::INFINITY,
    };

    let mut adj: Vec<Vec<(u32, f64)>> = vec![Vec::new(); n];
    for l in (0..epochs.len()).rev() {
        let (a, b) = epochs[l].merge;
        let split = present - merge_times[l];

        let mut row_a = std::mem::take(&mut adj[a]);
        row_a.retain(|&(_, mark)| mark > split);
        let mut row_b = Vec::with_capacity(row_a.len() + 1);
        for &(y, _) in &row_a {
            let mark = first_mark(split, rng);
            row_b.push((y, mark));
            adj[y as usize].push((b as u32, mark));
        }
        let mark = first_mark(split, rng);
        row_a.push((b as u32, mark));
        row_b.push((a as u32, mark));
        adj[a] = row_a;
        adj[b] = row_b;
    }

    let mut edges = Vec::new();
    for (i, row) in adj.iter().enumerate() {
        for &(y, mark) in row {
            if (y as usize) > i && mark > present {
                edges.push((i as u32, y));
            }
        }
    }
    EdgeList::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genealogy::Epoch;
    use crate::samplers::substream;

    #[test]
    fn zero_rate_gives_complete_graph() {
        for n in 1..15 {
            let p = ModelParams::new(n, 0.0).unwrap();
            assert_eq!(
                sample_backward(&p, &mut substream(2, n as u64)),
                LabeledGraph::complete(n)
            );
        }
    }

    #[test]
    fn edge_survival_follows_lineage_length() {
        // Fixed genealogy on 3 vertices: {1,2} merge after 0.5, then {0,1} after
        // a further 1.0. The lineage of {1,2} has length 0.5, the others 1.5.
        let g = Genealogy::from_epochs(
            3,
            vec![
                Epoch {
                    duration: 0.5,
                    merge: (1, 2),
                },
                Epoch {
                    duration: 1.0,
                    merge: (0, 1),
                },
            ],
        )
        .unwrap();
        let r = 0.8;
        let m = 100_000;
        let mut count = [0usize; 3];
        let mut both_to_zero = 0usize;
        for j in 0..m {
            let e = sample_backward_from(&g, r, &mut substream(4, j));
            let has = |a, b| e.edges.contains(&(a, b));
            count[0] += has(1, 2) as usize;
            count[1] += has(0, 1) as usize;
            count[2] += has(0, 2) as usize;
            both_to_zero += (has(0, 1) && has(0, 2)) as usize;
        }
        let check = |hits: usize, p: f64| {
            let se = (p * (1.0 - p) / m as f64).sqrt();
            assert!(
                (hits as f64 / m as f64 - p).abs() < 4.0 * se,
                "{hits} vs {p}"
            );
        };
        check(count[0], (-r * 0.5f64).exp());
        check(count[1], (-r * 1.5f64).exp());
        check(count[2], (-r * 1.5f64).exp());
        // {0,1} and {0,2} share the ancestral segment of length 1.0.
        check(
            both_to_zero,
            (-r * 1.0f64).exp() * (-r * 0.5f64).exp().powi(2),
        );
    }
}
