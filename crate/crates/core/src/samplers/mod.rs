//! Samplers for `G(n, r)`.
//!
//! Three routes produce whole graphs:
//!
//! - [`sample_forward`] grows the graph one vertex at a time, thinning edges
//!   during each waiting period, then shuffles the labels.
//! - [`sample_backward`] draws a Kingman genealogy and keeps the pairs whose
//!   ancestral lineage carries no removal mark.
//! - [`sample_ctmc`] runs the duplication/removal chain itself from an initial
//!   graph; it only approaches `G(n, r)` after a burn-in.
//!
//! [`sample_degree_chain`] draws the degree of a fixed vertex directly.
//!
//! Every sampler takes an explicit random stream. Batches derive one stream
//! per replicate with [`substream`].

mod backward;
mod ctmc;
mod degree_chain;
mod forward;

pub use backward::{sample_backward, sample_backward_edges, sample_backward_from};
pub use ctmc::{default_burn_in, sample_ctmc, BURN_IN_HORIZON};
pub use degree_chain::{sample_degree_chain, sample_degree_chain_at, DegreeChainState};
pub use forward::{sample_forward, sample_forward_edges};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The `(n, r)` parameterization of `G(n, r)`.
///
/// `r` is the rescaled removal rate; the per-edge removal rate of the
/// underlying chain is `rho = 2r / (n - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    n: usize,
    r: f64,
}

impl ModelParams {
    pub fn new(n: usize, r: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("n must be at least 1"));
        }
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::invalid(format!(
                "r must be finite and non-negative, got {r}"
            )));
        }
        Ok(ModelParams { n, r })
    }

    /// Builds parameters from the raw removal rate `rho`.
    pub fn from_rho(n: usize, rho: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("rho is only defined for n >= 2"));
        }
        if !(rho >= 0.0 && rho.is_finite()) {
            return Err(Error::invalid(format!(
                "rho must be finite and non-negative, got {rho}"
            )));
        }
        Self::new(n, rho * (n - 1) as f64 / 2.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// `rho = 2r / (n - 1)`; `None` for `n = 1`.
    pub fn rho(&self) -> Option<f64> {
        (self.n >= 2).then(|| 2.0 * self.r / (self.n - 1) as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SamplerKind {
    Forward,
    Backward,
    Ctmc,
}

impl std::fmt::Display for SamplerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SamplerKind::Forward => "forward",
            SamplerKind::Backward => "backward",
            SamplerKind::Ctmc => "ctmc",
        })
    }
}

/// Random stream for replicate `index` of a batch seeded with `seed`.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Calls `kill(i)` for each index in `0..len` selected independently with
/// probability `1 - exp(-intensity)`, by jumping over geometric gaps.
pub(crate) fn for_each_marked<R, F>(len: usize, intensity: f64, rng: &mut R, mut kill: F)
where
    R: rand::Rng + ?Sized,
    F: FnMut(usize),
{
    if len == 0 || intensity <= 0.0 {
        return;
    }
    if intensity == f64::INFINITY {
        (0..len).for_each(kill);
        return;
    }
    let mut pos = 0usize;
    loop {
        // Survivors before the next mark: P(gap >= g) = exp(-g * intensity).
        let e: f64 = rng.sample(rand_distr::Exp1);
        let gap = (e / intensity).floor();
        if gap >= (len - pos) as f64 {
            return;
        }
        pos += gap as usize;
        kill(pos);
        pos += 1;
        if pos >= len {
            return;
        }
    }
}
