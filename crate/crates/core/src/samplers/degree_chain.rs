use rand::Rng;

use super::ModelParams;

/// State of the degree chain: `p` counts descendants of the first particle,
/// `q` descendants of immigrants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeChainState {
    pub p: u64,
    pub q: u64,
}

impl Default for DegreeChainState {
    fn default() -> Self {
        DegreeChainState { p: 1, q: 0 }
    }
}

impl DegreeChainState {
    /// One transition: `(p + 1, q)` with probability
    /// `(p + 1) / (p + 1 + q + 2r)`, otherwise `(p, q + 1)`.
    #[inline]
    pub fn step<R: Rng + ?Sized>(&mut self, r: f64, rng: &mut R) {
        let up = (self.p + 1) as f64;
        let total = up + self.q as f64 + 2.0 * r;
        if rng.random::<f64>() * total < up {
            self.p += 1;
        } else {
            self.q += 1;
        }
    }

    /// Particles after `k - 1` steps from `(1, 0)`.
    pub fn size(&self) -> u64 {
        self.p + self.q
    }
}

/// Degree of a fixed vertex of `G(n, r)`, drawn from the degree chain.
///
/// The chain runs from `(1, 0)` until it holds `n` particles; the degree is
/// `p - 1`.
pub fn sample_degree_chain<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> usize {
    let mut state = DegreeChainState::default();
    for _ in 1..params.n() {
        state.step(params.r(), rng);
    }
    (state.p - 1) as usize
}

/// Runs one chain and reads the degree at each of the (ascending) sizes in
/// `ns`. Each reading is marginally the degree law of `G(n, r)` for its `n`
/// with the same `r`.
pub fn sample_degree_chain_at<R: Rng + ?Sized>(r: f64, ns: &[usize], rng: &mut R) -> Vec<usize> {
    assert!(
        ns.windows(2).all(|w| w[0] <= w[1]),
        "sizes must be ascending"
    );
    let mut state = DegreeChainState::default();
    let mut out = Vec::with_capacity(ns.len());
    for &n in ns {
        while (state.size() as usize) < n {
            state.step(r, rng);
        }
        out.push((state.p - 1) as usize);
    }
    out
}
