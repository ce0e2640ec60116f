use super::AdjacencyRows;
use crate::{Error, Result};

#[inline]
fn popcount(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn is_empty(set: &[u64]) -> bool {
    set.iter().all(|&w| w == 0)
}

fn ones(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut bits = word;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(w * 64 + b)
        })
    })
}

fn full_set(n: usize, words: usize) -> Vec<u64> {
    let mut set = vec![0u64; words];
    for (w, word) in set.iter_mut().enumerate() {
        let lo = w * 64;
        if lo < n {
            let take = (n - lo).min(64);
            *word = if take == 64 {
                u64::MAX
            } else {
                (1u64 << take) - 1
            };
        }
    }
    set
}

/// Clique number by Bron-Kerbosch with Tomita pivoting and a size bound.
///
/// Returns 0 for the empty vertex set and 1 for an edgeless graph.
pub fn max_clique(rows: &AdjacencyRows) -> usize {
    let n = rows.n();
    if n == 0 {
        return 0;
    }
    let p = full_set(n, rows.words());
    let x = vec![0u64; rows.words()];
    let mut best = greedy_clique(rows);
    expand(rows, 0, p, x, &mut best);
    best
}

fn expand(rows: &AdjacencyRows, depth: usize, mut p: Vec<u64>, mut x: Vec<u64>, best: &mut usize) {
    if is_empty(&p) {
        if is_empty(&x) && depth > *best {
            *best = depth;
        }
        return;
    }
    if depth + popcount(&p) <= *best {
        return;
    }

    let pivot = ones(&p)
        .chain(ones(&x))
        .max_by_key(|&u| {
            p.iter()
                .zip(rows.row(u))
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
        })
        .expect("p is non-empty");
    let branch: Vec<usize> = {
        let pr = rows.row(pivot);
        let cand: Vec<u64> = p.iter().zip(pr).map(|(a, b)| a & !b).collect();
        ones(&cand).collect()
    };

    for v in branch {
        let row = rows.row(v);
        let np: Vec<u64> = p.iter().zip(row).map(|(a, b)| a & b).collect();
        let nx: Vec<u64> = x.iter().zip(row).map(|(a, b)| a & b).collect();
        expand(rows, depth + 1, np, nx, best);
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
        if depth + popcount(&p) <= *best {
            return;
        }
    }
}

/// Size of a clique grown greedily from the highest-degree vertex.
pub fn greedy_clique(rows: &AdjacencyRows) -> usize {
    let n = rows.n();
    if n == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(popcount(rows.row(v))));
    let mut cand = full_set(n, rows.words());
    let mut size = 0;
    for v in order {
        if cand[v / 64] >> (v % 64) & 1 == 1 {
            size += 1;
            for (c, r) in cand.iter_mut().zip(rows.row(v)) {
                *c &= r;
            }
        }
    }
    size
}

/// Number of colors used by largest-first greedy coloring, an upper bound on
/// the clique number.
pub fn greedy_coloring_bound(rows: &AdjacencyRows) -> usize {
    let n = rows.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(popcount(rows.row(v))));
    let mut color = vec![usize::MAX; n];
    let mut used = 0;
    let mut taken = Vec::new();
    for v in order {
        taken.clear();
        taken.resize(used + 1, false);
        for u in ones(rows.row(v)) {
            if color[u] != usize::MAX {
                taken[color[u]] = true;
            }
        }
        let c = taken.iter().position(|t| !t).unwrap_or(used);
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

/// Exact count of complete subgraphs of order `k`.
///
/// Every recursive candidate set counts against `budget`; running out is an
/// error rather than a truncated count.
pub fn count_complete_subgraphs(rows: &AdjacencyRows, k: usize, budget: u64) -> Result<u64> {
    let n = rows.n();
    if k == 0 {
        return Ok(1);
    }
    if k > n {
        return Ok(0);
    }
    let cand = full_set(n, rows.words());
    let mut used = 0u64;
    count_from(rows, &cand, k, budget, &mut used)
}

fn count_from(
    rows: &AdjacencyRows,
    cand: &[u64],
    need: usize,
    budget: u64,
    used: &mut u64,
) -> Result<u64> {
    *used += 1;
    if *used > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    if need == 1 {
        return Ok(popcount(cand) as u64);
    }
    let mut total = 0;
    let mut next = vec![0u64; cand.len()];
    for v in ones(cand) {
        let row = rows.row(v);
        let (vw, vb) = (v / 64, v % 64);
        for (w, slot) in next.iter_mut().enumerate() {
            let mut word = cand[w] & row[w];
            if w < vw {
                word = 0;
            } else if w == vw {
                word &= if vb == 63 { 0 } else { u64::MAX << (vb + 1) };
            }
            *slot = word;
        }
        if popcount(&next) >= need - 1 {
            total += count_from(rows, &next, need - 1, budget, used)?;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::LabeledGraph;

    fn brute_count(g: &LabeledGraph, k: usize) -> u64 {
        let n = g.n();
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if vs
                .iter()
                .enumerate()
                .all(|(a, &i)| vs[a + 1..].iter().all(|&j| g.has_edge(i, j)))
            {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force_on_a_fixed_graph() {
        let g = LabeledGraph::from_edges(
            7,
            [
                (0, 1),
                (0, 2),
                (1, 2),
                (2, 3),
                (1, 3),
                (0, 3),
                (4, 5),
                (5, 6),
                (3, 4),
                (2, 4),
            ],
        )
        .unwrap();
        let rows = g.adjacency_rows();
        for k in 1..=7 {
            assert_eq!(
                count_complete_subgraphs(&rows, k, u64::MAX).unwrap(),
                brute_count(&g, k),
                "k = {k}"
            );
        }
        assert_eq!(max_clique(&rows), 4);
    }

    #[test]
    fn word_boundary_clique() {
        let n = 130;
        let g = LabeledGraph::from_edges(n, [(62, 63), (63, 64), (62, 64), (127, 128), (128, 129)])
            .unwrap();
        let rows = g.adjacency_rows();
        assert_eq!(count_complete_subgraphs(&rows, 3, u64::MAX).unwrap(), 1);
        assert_eq!(max_clique(&rows), 3);
    }

    #[test]
    fn budget_is_enforced() {
        let rows = LabeledGraph::complete(20).adjacency_rows();
        assert!(matches!(
            count_complete_subgraphs(&rows, 10, 100),
            Err(Error::BudgetExceeded { budget: 100 })
        ));
    }

    #[test]
    fn bounds_bracket_clique_number() {
        let g = LabeledGraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5)]).unwrap();
        let rows = g.adjacency_rows();
        let k = max_clique(&rows);
        assert!(greedy_clique(&rows) <= k);
        assert!(greedy_coloring_bound(&rows) >= k);
    }
}
