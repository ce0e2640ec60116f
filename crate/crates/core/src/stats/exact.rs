//! Exact stationary law of the duplication/removal chain for tiny `n`.
//!
//! States are graphs on `n <= 4` vertices, encoded by their pair bitmask
//! (at most 64 states). The generator is assembled move by move and
//! `pi Q = 0, sum(pi) = 1` is solved by LU decomposition.

use nalgebra::{DMatrix, DVector};

use crate::graph::{pair_count, pair_index, LabeledGraph};
use crate::samplers::ModelParams;
use crate::stats::PmfTable;
use crate::{Error, Result};

/// Largest vertex count accepted by the exact solver.
pub const MAX_EXACT_N: usize = 4;

/// Time scale of the generator. The stationary law does not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clock {
    /// Duplication at rate 1 per vertex, removal at rate `rho` per edge.
    Unit,
    /// All rates multiplied by `(n - 1) / 2`: duplication at `(n - 1)/2`,
    /// removal at `r` per edge.
    Rescaled,
}

/// Stationary probabilities indexed by state code.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryLaw {
    n: usize,
    probs: Vec<f64>,
}

impl StationaryLaw {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Probability of each graph, indexed by [`LabeledGraph::state_code`].
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, g: &LabeledGraph) -> f64 {
        assert_eq!(g.n(), self.n);
        self.probs[g.state_code().expect("small graph") as usize]
    }

    pub fn graphs(&self) -> impl Iterator<Item = (LabeledGraph, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(code, &p)| (LabeledGraph::from_state_code(self.n, code as u64), p))
    }

    pub fn expectation<F: Fn(&LabeledGraph) -> f64>(&self, f: F) -> f64 {
        self.graphs().map(|(g, p)| p * f(&g)).sum()
    }

    pub fn p_edge(&self, i: usize, j: usize) -> f64 {
        self.expectation(|g| g.has_edge(i, j) as u8 as f64)
    }

    pub fn p_complete(&self) -> f64 {
        self.prob(&LabeledGraph::complete(self.n))
    }

    /// Covariance of the indicators of edges `e` and `f`.
    pub fn edge_covariance(&self, e: (usize, usize), f: (usize, usize)) -> f64 {
        let both =
            self.expectation(|g| (g.has_edge(e.0, e.1) && g.has_edge(f.0, f.1)) as u8 as f64);
        both - self.p_edge(e.0, e.1) * self.p_edge(f.0, f.1)
    }

    /// Law of the number of edges.
    pub fn edge_count_law(&self) -> PmfTable {
        let mut probs = vec![0.0; pair_count(self.n) + 1];
        for (g, p) in self.graphs() {
            probs[g.edge_count()] += p;
        }
        PmfTable::new((0..probs.len()).collect(), probs).expect("normalised law")
    }
}

pub fn exact_stationary_small_n(params: &ModelParams) -> Result<StationaryLaw> {
    exact_stationary_with_clock(params, Clock::Unit)
}

pub fn exact_stationary_with_clock(params: &ModelParams, clock: Clock) -> Result<StationaryLaw> {
    let n = params.n();
    if n > MAX_EXACT_N {
        return Err(Error::StateSpaceTooLarge {
            n,
            max: MAX_EXACT_N,
        });
    }
    let m = pair_count(n);
    let states = 1usize << m;
    if n < 2 {
        return Ok(StationaryLaw {
            n,
            probs: vec![1.0],
        });
    }

    let rho = params.rho().expect("n >= 2");
    let scale = match clock {
        Clock::Unit => 1.0,
        Clock::Rescaled => (n - 1) as f64 / 2.0,
    };
    let dup_rate = scale / (n - 1) as f64;
    let removal_rate = scale * rho;

    let bit = |i: usize, j: usize| -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        pair_index(n, a, b)
    };

    // q[x * states + y]: rate from x to y.
    let mut q = DMatrix::<f64>::zeros(states, states);
    for x in 0..states {
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let mut y = x;
                for w in (0..n).filter(|&w| w != j) {
                    let linked = w == i || x >> bit(i, w) & 1 == 1;
                    if linked {
                        y |= 1 << bit(j, w);
                    } else {
                        y &= !(1 << bit(j, w));
                    }
                }
                if y != x {
                    q[(x, y)] += dup_rate;
                }
            }
        }
        for p in 0..m {
            if x >> p & 1 == 1 {
                q[(x, x & !(1 << p))] += removal_rate;
            }
        }
        let out: f64 = (0..states).map(|y| q[(x, y)]).sum();
        q[(x, x)] = -out;
    }

    let mut a = q.transpose();
    for c in 0..states {
        a[(states - 1, c)] = 1.0;
    }
    let mut b = DVector::<f64>::zeros(states);
    b[states - 1] = 1.0;
    let pi = a.lu().solve(&b).ok_or(Error::SingularSystem)?;

    let probs: Vec<f64> = pi
        .iter()
        .map(|&p| if p < 0.0 && p > -1e-14 { 0.0 } else { p })
        .collect();
    Ok(StationaryLaw { n, probs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn law(n: usize, r: f64) -> StationaryLaw {
        exact_stationary_small_n(&ModelParams::new(n, r).unwrap()).unwrap()
    }

    #[test]
    fn two_vertices_is_bernoulli() {
        // Balance: duplication (total rate 2) re-adds the edge, removal at
        // rate rho = 2r deletes it, so P(edge) = 2 / (2 + 2r).
        for r in [0.1, 1.0, 7.0] {
            let l = law(2, r);
            assert!((l.p_edge(0, 1) - 1.0 / (1.0 + r)).abs() < 1e-14);
        }
    }

    #[test]
    fn three_vertices_edge_and_complete_probabilities() {
        let l = law(3, 1.0);
        assert!((l.p_edge(0, 1) - 0.5).abs() < 1e-12);
        assert!((l.p_complete() - 0.25).abs() < 1e-12);
        assert!((l.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_rate_is_point_mass_on_complete() {
        let l = law(4, 0.0);
        assert!((l.p_complete() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rescaled_clock_has_same_law() {
        for n in 2..=4 {
            let p = ModelParams::new(n, 2.5).unwrap();
            let a = exact_stationary_with_clock(&p, Clock::Unit).unwrap();
            let b = exact_stationary_with_clock(&p, Clock::Rescaled).unwrap();
            for (x, y) in a.probs().iter().zip(b.probs()) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn law_is_constant_on_isomorphism_classes() {
        let l = law(4, 0.7);
        let perms: [[usize; 4]; 3] = [[1, 0, 2, 3], [0, 2, 3, 1], [3, 2, 1, 0]];
        for (g, p) in l.graphs() {
            for perm in &perms {
                assert!((l.prob(&g.relabel(perm)) - p).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn rejects_large_n() {
        assert!(matches!(
            exact_stationary_small_n(&ModelParams::new(5, 1.0).unwrap()),
            Err(Error::StateSpaceTooLarge { n: 5, .. })
        ));
    }
}
