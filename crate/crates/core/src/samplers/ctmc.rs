use rand::Rng;

use super::ModelParams;
use crate::graph::{pair_count, LabeledGraph};
use crate::{Error, Result};

/// Rescaled time after which [`default_burn_in`] stops.
pub const BURN_IN_HORIZON: f64 = 12.0;

/// Default burn-in for [`sample_ctmc`]: the expected number of events in
/// [`BURN_IN_HORIZON`] units of rescaled time, `12 (n - 1)/2 * n (1 + r)`.
///
/// Once every pair of current vertices shares an ancestor born after the
/// start, the graph no longer depends on the initial state. In rescaled
/// time that is the height of a coalescent, which exceeds `t` with
/// probability about `3 e^{-t}`, so the distance to stationarity after the
/// horizon is below `1e-5`.
pub fn default_burn_in(params: &ModelParams) -> u64 {
    let n = params.n() as f64;
    let unit_time = BURN_IN_HORIZON * (n - 1.0) / 2.0;
    (unit_time * n * (1.0 + params.r())).ceil() as u64
}

/// Runs the duplication/removal chain from `initial` for `events` events.
///
/// The chain is uniformized at the constant rate `n + rho C(n, 2)`: an event
/// is a duplication with probability `n / total` (uniform duplicator,
/// uniform other vertex replaced), otherwise a removal attempt on a uniform
/// pair, which does nothing if the pair is not an edge. Uniformization keeps
/// the stationary law of the continuous-time chain, which counting raw jumps
/// would not.
pub fn sample_ctmc<R: Rng + ?Sized>(
    params: &ModelParams,
    events: u64,
    initial: &LabeledGraph,
    rng: &mut R,
) -> Result<LabeledGraph> {
    let n = params.n();
    let rho = params
        .rho()
        .ok_or_else(|| Error::invalid("the chain needs n >= 2"))?;
    if initial.n() != n {
        return Err(Error::invalid(format!(
            "initial graph has {} vertices, expected {n}",
            initial.n()
        )));
    }

    let mut g = initial.clone();
    let dup_rate = n as f64;
    let total = dup_rate + rho * pair_count(n) as f64;
    for _ in 0..events {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if rng.random::<f64>() * total < dup_rate {
            duplicate(&mut g, i, j);
        } else {
            g.set_edge(i, j, false);
        }
    }
    Ok(g)
}

/// Vertex `src` replaces `dst`: `dst` keeps an edge to `src` and to each
/// neighbor of `src`, and nothing else.
fn duplicate(g: &mut LabeledGraph, src: usize, dst: usize) {
    for w in 0..g.n() {
        if w == dst {
            continue;
        }
        let linked = w == src || g.has_edge(src, w);
        g.set_edge(dst, w, linked);
    }
}
