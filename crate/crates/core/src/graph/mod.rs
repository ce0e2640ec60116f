//! Labeled undirected simple graphs and the invariants measured on them.

mod cliques;
mod components;
mod edgelist;
mod summary;

pub use cliques::{count_complete_subgraphs, greedy_clique, greedy_coloring_bound, max_clique};
pub use components::{connected_components, count_components, UnionFind};
pub use edgelist::{read_edge_list, write_edge_list, write_edges};
pub use summary::{
    summarize, summarize_with_budget, SummaryStats, DEFAULT_CLIQUE_LIMIT, DEFAULT_WORK_BUDGET,
};

use crate::{Error, Result};

/// Number of unordered pairs on `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{i, j}` (`i < j`) in the row-major upper triangle.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// An undirected simple graph on `{0, .., n-1}`.
///
/// Adjacency is a packed upper-triangular bit matrix, so there are no
/// self-loops and symmetry holds by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    n: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LabeledGraph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl LabeledGraph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        LabeledGraph {
            n,
            bits: vec![0; pair_count(n).div_ceil(64)],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        let m = pair_count(n);
        for w in 0..g.bits.len() {
            let lo = w * 64;
            let take = (m - lo).min(64);
            g.bits[w] = if take == 64 {
                u64::MAX
            } else {
                (1u64 << take) - 1
            };
        }
        g
    }

    /// Builds a graph from 0-based edges. Duplicate edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (a, b) in edges {
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            g.set_edge(a, b, true);
        }
        Ok(g)
    }

    /// Decodes a graph from its pair bitmask (bit `pair_index(i, j)` set iff
    /// `{i, j}` is an edge). Only valid while the pair count fits in 64 bits.
    pub fn from_state_code(n: usize, code: u64) -> Self {
        assert!(pair_count(n) <= 64, "state codes need at most 64 pairs");
        let mut g = Self::empty(n);
        if !g.bits.is_empty() {
            let m = pair_count(n);
            g.bits[0] = if m == 64 {
                code
            } else {
                code & ((1u64 << m) - 1)
            };
        }
        g
    }

    /// The pair bitmask of this graph, or `None` when `C(n, 2) > 64`.
    pub fn state_code(&self) -> Option<u64> {
        match pair_count(self.n) {
            0 => Some(0),
            m if m <= 64 => Some(self.bits[0]),
            _ => None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        if i == j {
            return false;
        }
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let p = pair_index(self.n, a, b);
        self.bits[p / 64] >> (p % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, i: usize, j: usize, present: bool) {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        let p = pair_index(self.n, a, b);
        if present {
            self.bits[p / 64] |= 1 << (p % 64);
        } else {
            self.bits[p / 64] &= !(1 << (p % 64));
        }
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| {
            ((i + 1)..n)
                .filter(move |&j| self.has_edge(i, j))
                .map(move |j| (i, j))
        })
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (i, j) in self.edges() {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(v, u)).count()
    }

    /// Applies a vertex relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut g = Self::empty(self.n);
        for (i, j) in self.edges() {
            g.set_edge(perm[i], perm[j], true);
        }
        g
    }

    pub fn to_edge_list(&self) -> EdgeList {
        EdgeList {
            n: self.n,
            edges: self.edges().map(|(i, j)| (i as u32, j as u32)).collect(),
        }
    }

    /// Adjacency as one bitset row per vertex.
    pub fn adjacency_rows(&self) -> AdjacencyRows {
        let mut rows = AdjacencyRows::new(self.n);
        for (i, j) in self.edges() {
            rows.insert(i, j);
            rows.insert(j, i);
        }
        rows
    }
}

/// A sparse edge list, the output format of the samplers for large `n`.
///
/// Edges are 0-based with `i < j`, sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
}

impl EdgeList {
    /// Normalises orientation, sorts and removes duplicates.
    pub fn new(n: usize, mut edges: Vec<(u32, u32)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        EdgeList { n, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in &self.edges {
            deg[i as usize] += 1;
            deg[j as usize] += 1;
        }
        deg
    }

    pub fn to_graph(&self) -> Result<LabeledGraph> {
        LabeledGraph::from_edges(
            self.n,
            self.edges.iter().map(|&(i, j)| (i as usize, j as usize)),
        )
    }
}

/// Row bitsets over `n` vertices, used by the clique routines.
#[derive(Debug, Clone)]
pub struct AdjacencyRows {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl AdjacencyRows {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        AdjacencyRows {
            n,
            words,
            data: vec![0; words * n],
        }
    }

    pub fn from_edge_list(list: &EdgeList) -> Self {
        let mut rows = AdjacencyRows::new(list.n);
        for &(i, j) in &list.edges {
            rows.insert(i as usize, j as usize);
            rows.insert(j as usize, i as usize);
        }
        rows
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.data[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    fn insert(&mut self, v: usize, u: usize) {
        self.data[v * self.words + u / 64] |= 1 << (u % 64);
    }
}
