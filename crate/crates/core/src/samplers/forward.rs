use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Exp};

use super::{for_each_marked, ModelParams};
use crate::graph::{EdgeList, LabeledGraph};

/// Forward construction, returned as a sparse edge list.
///
/// Starting from a single edge on two vertices, the graph waits an
/// `Exp(C(k, 2))` time while it has `k` vertices; every edge survives that
/// wait with probability `exp(-r T)`. Unless `k = n`, a uniform vertex is
/// then copied (with its incident edges and an edge to the copy) as vertex
/// `k`. The graph is read just before the next copy would appear, so the
/// wait at `k = n` is included, and the labels are shuffled uniformly.
pub fn sample_forward_edges<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> EdgeList {
    let n = params.n();
    let r = params.r();
    if n == 1 {
        return EdgeList::new(1, Vec::new());
    }

    let mut edges: Vec<(u32, u32)> = vec![(0, 1)];
    let mut marks = Vec::new();
    for k in 2..=n {
        let rate = (k * (k - 1) / 2) as f64;
        let wait = Exp::new(rate).expect("positive rate").sample(rng);
        thin(&mut edges, r * wait, &mut marks, rng);
        if k < n {
            let u = rng.random_range(0..k) as u32;
            let v = k as u32;
            let before = edges.len();
            for idx in 0..before {
                let (a, b) = edges[idx];
                if a == u {
                    edges.push((b, v));
                } else if b == u {
                    edges.push((a, v));
                }
            }
            edges.push((u, v));
        }
    }

    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    let relabeled = edges
        .into_iter()
        .map(|(a, b)| (perm[a as usize], perm[b as usize]))
        .collect();
    EdgeList::new(n, relabeled)
}

pub fn sample_forward<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> LabeledGraph {
    sample_forward_edges(params, rng)
        .to_graph()
        .expect("sampler emits valid edges")
}

/// Removes each edge independently with probability `1 - exp(-intensity)`.
fn thin<R: Rng + ?Sized>(
    edges: &mut Vec<(u32, u32)>,
    intensity: f64,
    marks: &mut Vec<usize>,
    rng: &mut R,
) {
    marks.clear();
    for_each_marked(edges.len(), intensity, rng, |i| marks.push(i));
    if marks.is_empty() {
        return;
    }
    let mut next = marks.iter().copied().peekable();
    let mut write = 0;
    for read in 0..edges.len() {
        if next.peek() == Some(&read) {
            next.next();
            continue;
        }
        edges[write] = edges[read];
        write += 1;
    }
    edges.truncate(write);
}
