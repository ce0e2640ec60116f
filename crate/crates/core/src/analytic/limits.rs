use serde::{Deserialize, Serialize};
use statrs::distribution::{Beta, ContinuousCDF};

use crate::{Error, Result};

/// Limit laws of the rescaled degree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LimitLaw {
    /// `D / n` with `r` fixed: `Beta(2, 2r)`.
    Beta { r: f64 },
    /// `D / (n / r)` with `1 << r << n`: density `4x e^{-2x}`.
    SizeBiasedExponential,
    /// `D + 1` with `2r / n -> rho`: `k (rho/(1+rho))^2 (1/(1+rho))^{k-1}`.
    SizeBiasedGeometric { rho: f64 },
}

impl LimitLaw {
    /// Cumulative distribution function; for the geometric law this is
    /// `P(D + 1 <= x)`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        match *self {
            LimitLaw::Beta { r } => {
                check_positive(r, "r")?;
                let beta = Beta::new(2.0, 2.0 * r).map_err(|e| Error::invalid(e.to_string()))?;
                Ok(beta.cdf(x.clamp(0.0, 1.0)))
            }
            LimitLaw::SizeBiasedExponential => {
                // Gamma(2, 2): 1 - e^{-2x}(1 + 2x).
                Ok(if x <= 0.0 {
                    0.0
                } else {
                    1.0 - (-2.0 * x).exp() * (1.0 + 2.0 * x)
                })
            }
            LimitLaw::SizeBiasedGeometric { rho } => {
                check_positive(rho, "rho")?;
                if x < 1.0 {
                    return Ok(0.0);
                }
                let k = x.floor();
                let q = 1.0 / (1.0 + rho);
                let p = rho / (1.0 + rho);
                // sum_{j<=k} j p^2 q^{j-1} = 1 - q^k (1 + k p).
                Ok(1.0 - q.powf(k) * (1.0 + k * p))
            }
        }
    }
}

fn check_positive(v: f64, name: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive, got {v}")))
    }
}

/// Density (or pmf, for the geometric law) of a limit law at `at`.
pub fn limit_density(law: LimitLaw, at: f64) -> Result<f64> {
    match law {
        LimitLaw::Beta { r } => {
            check_positive(r, "r")?;
            if !(0.0..=1.0).contains(&at) {
                return Err(Error::invalid(format!(
                    "Beta density needs x in [0, 1], got {at}"
                )));
            }
            // 1 / B(2, 2r) = 2r (2r + 1).
            let two_r = 2.0 * r;
            Ok(two_r * (two_r + 1.0) * at * (1.0 - at).powf(two_r - 1.0))
        }
        LimitLaw::SizeBiasedExponential => {
            if at.is_nan() || at < 0.0 {
                return Err(Error::invalid(format!(
                    "exponential density needs x >= 0, got {at}"
                )));
            }
            Ok(4.0 * at * (-2.0 * at).exp())
        }
        LimitLaw::SizeBiasedGeometric { rho } => {
            check_positive(rho, "rho")?;
            if !(at >= 1.0 && at.fract() == 0.0) {
                return Err(Error::invalid(format!(
                    "geometric pmf needs an integer k >= 1, got {at}"
                )));
            }
            let p = rho / (1.0 + rho);
            Ok(at * p * p * (1.0 + rho).powf(-(at - 1.0)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_half_is_linear() {
        for x in [0.0, 0.2, 0.7, 1.0] {
            let d = limit_density(LimitLaw::Beta { r: 0.5 }, x).unwrap();
            assert!((d - 2.0 * x).abs() < 1e-15);
        }
    }

    #[test]
    fn exponential_vanishes_at_zero() {
        assert_eq!(
            limit_density(LimitLaw::SizeBiasedExponential, 0.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn geometric_first_point() {
        let d = limit_density(LimitLaw::SizeBiasedGeometric { rho: 1.0 }, 1.0).unwrap();
        assert!((d - 0.25).abs() < 1e-15);
    }

    #[test]
    fn domain_violations() {
        assert!(limit_density(LimitLaw::Beta { r: 0.0 }, 0.5).is_err());
        assert!(limit_density(LimitLaw::Beta { r: 1.0 }, 1.5).is_err());
        assert!(limit_density(LimitLaw::SizeBiasedExponential, -1.0).is_err());
        assert!(limit_density(LimitLaw::SizeBiasedGeometric { rho: 1.0 }, 1.5).is_err());
        assert!(limit_density(LimitLaw::SizeBiasedGeometric { rho: 0.0 }, 1.0).is_err());
    }

    #[test]
    fn geometric_cdf_matches_partial_sums() {
        let law = LimitLaw::SizeBiasedGeometric { rho: 0.7 };
        let mut acc = 0.0;
        for k in 1..30 {
            acc += limit_density(law, k as f64).unwrap();
            assert!((law.cdf(k as f64).unwrap() - acc).abs() < 1e-13);
        }
    }

    #[test]
    fn exponential_cdf_integrates_density() {
        // Trapezoid rule on [0, 3].
        let steps = 30_000;
        let h = 3.0 / steps as f64;
        let f = |x| limit_density(LimitLaw::SizeBiasedExponential, x).unwrap();
        let integral: f64 = (0..steps)
            .map(|i| 0.5 * h * (f(i as f64 * h) + f((i + 1) as f64 * h)))
            .sum();
        assert!((LimitLaw::SizeBiasedExponential.cdf(3.0).unwrap() - integral).abs() < 1e-7);
    }
}
