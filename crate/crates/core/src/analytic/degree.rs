use statrs::function::gamma::ln_gamma;

use crate::samplers::ModelParams;
use crate::stats::PmfTable;
use crate::{Error, Result};

/// Unnormalised closed-form degree probabilities `P(D = k)`, `k < n`.
///
/// `P(D = k) = 2r(2r+1) / ((n+2r)(n-1+2r)) * (k+1) * prod_{i=1..k} (n-i)/(n-i+2r-1)`,
/// summed in log space. Exposed so the normalisation of the formula itself
/// can be checked.
pub fn degree_pmf_terms(params: &ModelParams) -> Vec<f64> {
    let n = params.n();
    let r = params.r();
    if n == 1 {
        return vec![1.0];
    }
    if r == 0.0 {
        let mut probs = vec![0.0; n];
        probs[n - 1] = 1.0;
        return probs;
    }
    let nf = n as f64;
    let two_r = 2.0 * r;
    let ln_head = two_r.ln() + two_r.ln_1p() - (nf + two_r).ln() - (nf - 1.0 + two_r).ln();
    let mut ln_prod = 0.0;
    let mut probs = Vec::with_capacity(n);
    for k in 0..n {
        if k > 0 {
            ln_prod -= ((two_r - 1.0) / (n - k) as f64).ln_1p();
        }
        probs.push((ln_head + ((k + 1) as f64).ln() + ln_prod).exp());
    }
    probs
}

/// Law of the degree of a fixed vertex, on `{0, .., n-1}`.
pub fn degree_pmf(params: &ModelParams) -> Result<PmfTable> {
    let mut probs = degree_pmf_terms(params);
    let total: f64 = probs.iter().sum();
    if !(total.is_finite() && (total - 1.0).abs() < 1e-9) {
        return Err(Error::invalid(format!(
            "degree law lost normalisation: mass {total}"
        )));
    }
    for p in probs.iter_mut() {
        *p /= total;
    }
    PmfTable::new((0..probs.len()).collect(), probs)
}

/// `P(D = n - 1) = Gamma(2+2r) Gamma(n+1) / Gamma(n+1+2r)`.
pub fn full_degree_probability(params: &ModelParams) -> f64 {
    let n = params.n() as f64;
    let two_r = 2.0 * params.r();
    (ln_gamma(2.0 + two_r) + ln_gamma(n + 1.0) - ln_gamma(n + 1.0 + two_r)).exp()
}

/// Mean and variance of [`degree_pmf`].
pub fn pmf_moments_check(params: &ModelParams) -> Result<(f64, f64)> {
    let pmf = degree_pmf(params)?;
    Ok((pmf.mean(), pmf.variance()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, r: f64) -> ModelParams {
        ModelParams::new(n, r).unwrap()
    }

    #[test]
    fn two_vertices_reduce_to_bernoulli() {
        let pmf = degree_pmf(&params(2, 1.0)).unwrap();
        assert!((pmf.prob(0) - 0.5).abs() < 1e-15);
        assert!((pmf.prob(1) - 0.5).abs() < 1e-15);
        let r = 3.0;
        let (mean, _) = pmf_moments_check(&params(2, r)).unwrap();
        assert!((mean - 0.25).abs() < 1e-15);
    }

    #[test]
    fn zero_rate_is_point_mass() {
        let pmf = degree_pmf(&params(6, 0.0)).unwrap();
        assert_eq!(pmf.prob(5), 1.0);
        assert_eq!(full_degree_probability(&params(6, 0.0)), 1.0);
    }

    #[test]
    fn mean_and_variance_substitutions() {
        let (mean, _) = pmf_moments_check(&params(11, 1.0)).unwrap();
        assert!((mean - 5.0).abs() < 1e-12);
        let (_, var) = pmf_moments_check(&params(3, 1.0)).unwrap();
        assert!((var - 0.6).abs() < 1e-12);
    }

    #[test]
    fn top_degree_matches_gamma_ratio() {
        for (n, r) in [(2, 0.5), (10, 1.0), (200, 0.001), (50, 10.0)] {
            let p = params(n, r);
            let pmf = degree_pmf(&p).unwrap();
            let g = full_degree_probability(&p);
            assert!((pmf.prob(n - 1) / g - 1.0).abs() < 1e-10, "n={n} r={r}");
        }
    }

    #[test]
    fn single_vertex() {
        assert_eq!(degree_pmf(&params(1, 2.0)).unwrap().prob(0), 1.0);
    }
}
