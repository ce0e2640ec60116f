//! Closed-form quantities of `G(n, r)`.
//!
//! Products and binomials go through `ln_gamma`/`ln_binomial` or `ln_1p`;
//! `r = 0` is accepted everywhere and gives the complete-graph limit.

mod bounds;
mod degree;
mod limits;
mod regime;

pub use bounds::{cc_bounds, clique_upper_bound, stein_chen_bound, CcBounds, SteinChen};
pub use degree::{degree_pmf, degree_pmf_terms, full_degree_probability, pmf_moments_check};
pub use limits::{limit_density, LimitLaw};
pub use regime::{
    classify_regime, classify_regime_with, Regime, RegimeEvidence, RegimeLabel, RegimeThresholds,
};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_binomial;

use crate::samplers::ModelParams;
use crate::{Error, Result};

/// Largest subgraph order listed in [`MomentSet::mean_complete`].
pub const MOMENT_ORDERS_MAX: usize = 16;

/// First and second moments of the standard invariants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    /// `P(i ~ j)`.
    pub p_edge: f64,
    pub var_edge_indicator: f64,
    /// Covariance of two edge indicators sharing a vertex.
    pub cov_shared: f64,
    /// Covariance of two edge indicators on disjoint pairs.
    pub cov_disjoint: f64,
    pub mean_degree: f64,
    pub var_degree: f64,
    /// Covariance of the degrees of two distinct vertices.
    pub cov_degree: f64,
    pub mean_edges: f64,
    pub var_edges: f64,
    /// Expected number of complete subgraphs of order `k`, for
    /// `2 <= k <= min(n, MOMENT_ORDERS_MAX)`.
    pub mean_complete: BTreeMap<usize, f64>,
}

pub fn moments(params: &ModelParams) -> Result<MomentSet> {
    let n = params.n();
    if n < 2 {
        return Err(Error::invalid("moments need n >= 2"));
    }
    let nf = n as f64;
    let r = params.r();
    let one_r = 1.0 + r;
    let one_r2 = one_r * one_r;

    let p_edge = 1.0 / one_r;
    let var_edge_indicator = r / one_r2;
    let cov_shared = r / (one_r2 * (3.0 + 2.0 * r));
    let cov_disjoint = 2.0 * r / (one_r2 * (3.0 + r) * (3.0 + 2.0 * r));
    let mean_degree = (nf - 1.0) / one_r;
    let var_degree = r * (nf - 1.0) * (1.0 + 2.0 * r + nf) / (one_r2 * (3.0 + 2.0 * r));
    let cov_degree = r / one_r2
        * (1.0
            + 3.0 * (nf - 2.0) / (3.0 + 2.0 * r)
            + 2.0 * (nf - 2.0) * (nf - 3.0) / ((3.0 + r) * (3.0 + 2.0 * r)));
    let mean_edges = nf * (nf - 1.0) / (2.0 * one_r);
    let var_edges =
        r * nf * (nf - 1.0) * (nf * nf + 2.0 * r * r + 2.0 * nf * r + nf + 5.0 * r + 3.0)
            / (2.0 * one_r2 * (3.0 + r) * (3.0 + 2.0 * r));
    let mean_complete = (2..=n.min(MOMENT_ORDERS_MAX))
        .map(|k| (k, expected_complete_subgraphs(params, k)))
        .collect();

    Ok(MomentSet {
        p_edge,
        var_edge_indicator,
        cov_shared,
        cov_disjoint,
        mean_degree,
        var_degree,
        cov_degree,
        mean_edges,
        var_edges,
        mean_complete,
    })
}

/// `ln E[X_{n,k}] = ln C(n, k) - (k - 1) ln(1 + r)`.
pub fn ln_expected_complete_subgraphs(params: &ModelParams, k: usize) -> f64 {
    let n = params.n();
    if k > n {
        return f64::NEG_INFINITY;
    }
    if k == 0 {
        return 0.0;
    }
    ln_binomial(n as u64, k as u64) - (k as f64 - 1.0) * params.r().ln_1p()
}

/// `E[X_{n,k}] = C(n, k) (1 + r)^-(k - 1)`.
pub fn expected_complete_subgraphs(params: &ModelParams, k: usize) -> f64 {
    ln_expected_complete_subgraphs(params, k).exp()
}

/// Probability that `G(n, r)` is complete, `(1 + r)^-(n - 1)`.
pub fn p_complete(params: &ModelParams) -> f64 {
    (-(params.n() as f64 - 1.0) * params.r().ln_1p()).exp()
}
