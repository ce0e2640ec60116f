use serde::{Deserialize, Serialize};

use super::{classify_regime, ln_expected_complete_subgraphs, Regime};
use crate::samplers::ModelParams;
use crate::{Error, Result};

/// Smallest `k` with `E[X_{n,k}] <= tail`, so `P(clique number >= k) <= tail`
/// by Markov's inequality. Returns `n + 1` when no `k <= n` qualifies.
pub fn clique_upper_bound(params: &ModelParams, tail: f64) -> Result<usize> {
    if !(tail > 0.0 && tail < 1.0) {
        return Err(Error::invalid(format!(
            "tail must lie in (0, 1), got {tail}"
        )));
    }
    let ln_tail = tail.ln();
    let n = params.n();
    Ok((1..=n)
        .find(|&k| ln_expected_complete_subgraphs(params, k) <= ln_tail)
        .unwrap_or(n + 1))
}

/// Asymptotic bracket `r/2 <= #CC <= 2 r ln n` for the number of components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CcBounds {
    pub lower: f64,
    pub upper: f64,
    /// The bracket is only proved in the intermediate regime.
    pub regime: Regime,
}

pub fn cc_bounds(params: &ModelParams) -> CcBounds {
    let r = params.r();
    CcBounds {
        lower: r / 2.0,
        upper: 2.0 * r * (params.n() as f64).ln(),
        regime: classify_regime(params.n(), r).regime,
    }
}

/// Stein-Chen bound on `d_TV(|E|, Poisson(lambda))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteinChen {
    /// `E|E| = n (n - 1) / (2 (r + 1))`.
    pub lambda: f64,
    pub c_n: f64,
    /// `min(1, 1/lambda) * c_n`.
    pub bound: f64,
}

pub fn stein_chen_bound(params: &ModelParams) -> Result<SteinChen> {
    let n = params.n();
    if n < 2 {
        return Err(Error::invalid("the edge count needs n >= 2"));
    }
    let nf = n as f64;
    let r = params.r();
    let lambda = nf * (nf - 1.0) / (2.0 * (r + 1.0));
    // Numerator polynomial in r: (2n - 2) r^2 + (n^2 + n + 3) r + 9.
    let poly = ((2.0 * nf - 2.0) * r + (nf * nf + nf + 3.0)) * r + 9.0;
    let c_n = nf * (nf - 1.0) * poly / (2.0 * (2.0 * r + 3.0) * (r + 3.0) * (r + 1.0).powi(2));
    Ok(SteinChen {
        lambda,
        c_n,
        bound: (1.0 / lambda).min(1.0) * c_n,
    })
}
