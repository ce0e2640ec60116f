use super::{EdgeList, LabeledGraph};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let grand = self.parent[self.parent[x] as usize];
            self.parent[x] = grand;
            x = grand as usize;
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// Number of connected components of `g`.
pub fn connected_components(g: &LabeledGraph) -> usize {
    let mut uf = UnionFind::new(g.n());
    for (i, j) in g.edges() {
        uf.union(i, j);
    }
    uf.set_count()
}

/// Number of connected components of a sparse edge list.
pub fn count_components(list: &EdgeList) -> usize {
    let mut uf = UnionFind::new(list.n);
    for &(i, j) in &list.edges {
        uf.union(i as usize, j as usize);
    }
    uf.set_count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_components() {
        assert_eq!(connected_components(&LabeledGraph::empty(3)), 3);
    }

    #[test]
    fn complete_graph_components() {
        assert_eq!(connected_components(&LabeledGraph::complete(3)), 1);
    }

    #[test]
    fn single_edge_on_four_vertices() {
        let g = LabeledGraph::from_edges(4, [(0, 1)]).unwrap();
        assert_eq!(connected_components(&g), 3);
        assert_eq!(count_components(&g.to_edge_list()), 3);
    }

    #[test]
    fn union_is_idempotent() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(!uf.union(1, 0));
        assert!(uf.union(3, 4));
        assert!(uf.union(1, 4));
        assert_eq!(uf.set_count(), 2);
        assert_eq!(uf.find(0), uf.find(3));
    }
}
