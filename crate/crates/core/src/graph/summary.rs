use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{cliques, connected_components, LabeledGraph};
use crate::{Error, Result};

/// Largest `n` for which the clique number is computed exactly by default.
pub const DEFAULT_CLIQUE_LIMIT: usize = 512;

/// Default cap on candidate sets visited while counting complete subgraphs.
pub const DEFAULT_WORK_BUDGET: u64 = 100_000_000;

/// Per-graph invariants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub edges: usize,
    pub degrees: Vec<usize>,
    pub num_components: usize,
    /// Exact clique number; only present when `n <= clique_limit`.
    pub clique_number: Option<usize>,
    /// `(greedy clique, greedy coloring)` bracket, present when the exact
    /// clique number was skipped.
    pub clique_bracket: Option<(usize, usize)>,
    /// Number of complete subgraphs of each requested order.
    pub complete_counts: BTreeMap<usize, u64>,
}

pub fn summarize(
    g: &LabeledGraph,
    clique_limit: usize,
    subgraph_orders: &[usize],
) -> Result<SummaryStats> {
    summarize_with_budget(g, clique_limit, subgraph_orders, DEFAULT_WORK_BUDGET)
}

pub fn summarize_with_budget(
    g: &LabeledGraph,
    clique_limit: usize,
    subgraph_orders: &[usize],
    budget: u64,
) -> Result<SummaryStats> {
    let n = g.n();
    if let Some(&k) = subgraph_orders.iter().find(|&&k| k < 2 || k > n) {
        return Err(Error::OrderOutOfRange { k, n });
    }

    let degrees = g.degrees();
    let edges = degrees.iter().sum::<usize>() / 2;
    let num_components = connected_components(g);

    let rows = g.adjacency_rows();
    let (clique_number, clique_bracket) = if n <= clique_limit {
        (Some(cliques::max_clique(&rows)), None)
    } else {
        (
            None,
            Some((
                cliques::greedy_clique(&rows),
                cliques::greedy_coloring_bound(&rows),
            )),
        )
    };

    let mut complete_counts = BTreeMap::new();
    for &k in subgraph_orders {
        let count = if k == 2 {
            edges as u64
        } else {
            cliques::count_complete_subgraphs(&rows, k, budget)?
        };
        complete_counts.insert(k, count);
    }

    Ok(SummaryStats {
        edges,
        degrees,
        num_components,
        clique_number,
        clique_bracket,
        complete_counts,
    })
}
