use serde::{Deserialize, Serialize};

/// Asymptotic zone of `r` relative to the scales `1/n, 1, n, n^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `r = 0`: the graph is complete with probability one.
    Complete,
    /// `r <= c / n`: completeness has non-vanishing probability.
    CompleteTransition,
    /// `c / n < r < 1`.
    Dense,
    /// `1 <= r <= n`.
    Intermediate,
    /// `n < r < c n^2`.
    Sparse,
    /// `r >= c n^2`: emptiness has non-vanishing probability.
    EmptyTransition,
}

/// Constants multiplying the regime boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeThresholds {
    pub complete: f64,
    pub dense: f64,
    pub sparse: f64,
    pub empty: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        RegimeThresholds {
            complete: 1.0,
            dense: 1.0,
            sparse: 1.0,
            empty: 1.0,
        }
    }
}

/// The raw ratios behind a classification.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeEvidence {
    pub r_times_n: f64,
    pub r: f64,
    pub r_over_n: f64,
    pub r_over_n2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegimeLabel {
    pub regime: Regime,
    pub evidence: RegimeEvidence,
    /// Always true: a single `(n, r)` point cannot determine an asymptotic
    /// regime, so the label is a convention set by the thresholds.
    pub pointwise_convention: bool,
}

pub fn classify_regime(n: usize, r: f64) -> RegimeLabel {
    classify_regime_with(n, r, RegimeThresholds::default())
}

pub fn classify_regime_with(n: usize, r: f64, c: RegimeThresholds) -> RegimeLabel {
    let nf = n as f64;
    let evidence = RegimeEvidence {
        r_times_n: r * nf,
        r,
        r_over_n: r / nf,
        r_over_n2: r / (nf * nf),
    };
    let regime = if r == 0.0 {
        Regime::Complete
    } else if r * nf <= c.complete {
        Regime::CompleteTransition
    } else if r < c.dense {
        Regime::Dense
    } else if r <= c.sparse * nf {
        Regime::Intermediate
    } else if r < c.empty * nf * nf {
        Regime::Sparse
    } else {
        Regime::EmptyTransition
    };
    RegimeLabel {
        regime,
        evidence,
        pointwise_convention: true,
    }
}
