//! Distribution distances, goodness-of-fit tests, the exact small-`n`
//! stationary solver and the Monte Carlo ensemble harness.

mod ensemble;
mod exact;

pub use ensemble::{
    mc_ensemble, write_histogram_csv, Comparison, EnsembleConfig, EnsembleReport, HistogramRow,
    InvariantSummary, StatisticKind, Verdict,
};
pub use exact::{
    exact_stationary_small_n, exact_stationary_with_clock, Clock, StationaryLaw, MAX_EXACT_N,
};

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF, Discrete, Poisson};

use crate::{Error, Result};

/// Allowed deviation of a probability table's total mass from 1.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// A discrete distribution on an ascending set of non-negative integers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PmfTable {
    support: Vec<usize>,
    probs: Vec<f64>,
}

impl PmfTable {
    pub fn new(support: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if support.len() != probs.len() {
            return Err(Error::invalid("support and probabilities differ in length"));
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("support must be strictly ascending"));
        }
        if probs.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::invalid(
                "probabilities must be finite and non-negative",
            ));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::invalid(format!("probabilities sum to {total}")));
        }
        Ok(PmfTable { support, probs })
    }

    /// Empirical law of `counts[k]` observations of value `k`.
    pub fn from_counts(counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::invalid("no observations"));
        }
        let probs = counts.iter().map(|&c| c as f64 / total as f64).collect();
        Ok(PmfTable {
            support: (0..counts.len()).collect(),
            probs,
        })
    }

    pub fn point_mass(k: usize) -> Self {
        PmfTable {
            support: vec![k],
            probs: vec![1.0],
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.support.iter().copied().zip(self.probs.iter().copied())
    }

    pub fn prob(&self, k: usize) -> f64 {
        self.support
            .binary_search(&k)
            .map(|i| self.probs[i])
            .unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.iter().map(|(k, p)| k as f64 * p).sum()
    }

    /// Variance, accumulated around the mean.
    pub fn variance(&self) -> f64 {
        let mu = self.mean();
        self.iter().map(|(k, p)| p * (k as f64 - mu).powi(2)).sum()
    }
}

/// Total variation distance `1/2 sum |p - q|` over the union of supports.
pub fn tv_distance(p: &PmfTable, q: &PmfTable) -> f64 {
    let (mut i, mut j) = (0, 0);
    let mut acc = 0.0;
    while i < p.support.len() || j < q.support.len() {
        let ki = p.support.get(i).copied().unwrap_or(usize::MAX);
        let kj = q.support.get(j).copied().unwrap_or(usize::MAX);
        match ki.cmp(&kj) {
            std::cmp::Ordering::Less => {
                acc += p.probs[i];
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                acc += q.probs[j];
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                acc += (p.probs[i] - q.probs[j]).abs();
                i += 1;
                j += 1;
            }
        }
    }
    0.5 * acc
}

/// Kolmogorov-Smirnov statistic `sup |F_emp - F|` against a continuous cdf.
///
/// At each distinct sample value both the left limit and the value of the
/// empirical cdf are compared, so ties are handled exactly.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::invalid("KS statistic of an empty sample"));
    }
    if samples.iter().any(|x| x.is_nan()) {
        return Err(Error::invalid("NaN in KS sample"));
    }
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    let m = xs.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < xs.len() {
        let x = xs[i];
        let mut j = i;
        while j < xs.len() && xs[j] == x {
            j += 1;
        }
        let f = cdf(x);
        d = d
            .max((f - i as f64 / m).abs())
            .max((j as f64 / m - f).abs());
        i = j;
    }
    Ok(d)
}

/// Outcome of a chi-square test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Minimum expected count per cell before cells are pooled.
const MIN_EXPECTED: f64 = 5.0;

/// Groups cell indices so each group's weight reaches `MIN_EXPECTED`.
/// Cells are pooled in ascending weight order.
fn pool_cells(weights: &[f64]) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > 0.0).collect();
    order.sort_by(|&a, &b| weights[a].partial_cmp(&weights[b]).unwrap().then(a.cmp(&b)));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut current = Vec::new();
    let mut acc = 0.0;
    for i in order {
        current.push(i);
        acc += weights[i];
        if acc >= MIN_EXPECTED {
            groups.push(std::mem::take(&mut current));
            acc = 0.0;
        }
    }
    if !current.is_empty() {
        match groups.first_mut() {
            Some(g) => g.extend(current),
            None => groups.push(current),
        }
    }
    groups
}

/// Pearson goodness-of-fit of observed counts against cell probabilities.
///
/// Cells with expected count below 5 are pooled. Observations falling in a
/// zero-probability cell make the statistic infinite.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> Result<ChiSquare> {
    if observed.len() != probs.len() {
        return Err(Error::invalid("observed and expected differ in length"));
    }
    let total: u64 = observed.iter().sum();
    if total == 0 {
        return Err(Error::invalid("no observations"));
    }
    if observed.iter().zip(probs).any(|(&o, &p)| o > 0 && p <= 0.0) {
        return Ok(ChiSquare {
            statistic: f64::INFINITY,
            dof: 0,
            p_value: 0.0,
        });
    }
    let expected: Vec<f64> = probs.iter().map(|p| p * total as f64).collect();
    let groups = pool_cells(&expected);
    let mut stat = 0.0;
    for g in &groups {
        let o: f64 = g.iter().map(|&i| observed[i] as f64).sum();
        let e: f64 = g.iter().map(|&i| expected[i]).sum();
        stat += (o - e).powi(2) / e;
    }
    finish(stat, groups.len().saturating_sub(1))
}

/// Pearson test that two count vectors come from the same distribution.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> Result<ChiSquare> {
    if a.len() != b.len() {
        return Err(Error::invalid("count vectors differ in length"));
    }
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    if na == 0.0 || nb == 0.0 {
        return Err(Error::invalid("no observations"));
    }
    let n = na + nb;
    // Pool on the smaller of the two expected counts of each cell.
    let weights: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| (x + y) as f64 * na.min(nb) / n)
        .collect();
    let groups = pool_cells(&weights);
    let mut stat = 0.0;
    for g in &groups {
        let oa: f64 = g.iter().map(|&i| a[i] as f64).sum();
        let ob: f64 = g.iter().map(|&i| b[i] as f64).sum();
        let col = oa + ob;
        let (ea, eb) = (col * na / n, col * nb / n);
        stat += (oa - ea).powi(2) / ea + (ob - eb).powi(2) / eb;
    }
    finish(stat, groups.len().saturating_sub(1))
}

fn finish(statistic: f64, dof: usize) -> Result<ChiSquare> {
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64)
            .map_err(|e| Error::invalid(e.to_string()))?
            .sf(statistic)
    };
    Ok(ChiSquare {
        statistic,
        dof,
        p_value,
    })
}

/// Poisson(`lambda`) on `0..=K`, where `K` is the first point with upper
/// tail mass below `tail`. Returns the renormalised table and the mass
/// that was cut off.
pub fn poisson_table(lambda: f64, tail: f64) -> Result<(PmfTable, f64)> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::invalid(format!(
            "Poisson mean must be positive, got {lambda}"
        )));
    }
    let dist = Poisson::new(lambda).map_err(|e| Error::invalid(e.to_string()))?;
    let mut probs = Vec::new();
    let mut cum = 0.0;
    let mut k = 0u64;
    loop {
        let p = dist.pmf(k);
        probs.push(p);
        cum += p;
        k += 1;
        if k as f64 > lambda && 1.0 - cum < tail {
            break;
        }
    }
    let cut = (1.0 - cum).max(0.0);
    let total: f64 = probs.iter().sum();
    let probs = probs.into_iter().map(|p| p / total).collect::<Vec<_>>();
    let support = (0..probs.len()).collect();
    Ok((PmfTable { support, probs }, cut))
}

/// TV distance between an empirical table and a truncated reference law,
/// with the truncated mass added so the result never understates it.
pub fn tv_with_truncation(empirical: &PmfTable, reference: &PmfTable, truncated: f64) -> f64 {
    (tv_distance(empirical, reference) + truncated).min(1.0)
}

/// Expected TV between `m` draws from `law` and `law` itself, bounded above
/// via Jensen: `1/2 sum sqrt(p (1 - p) / m)`.
pub fn tv_estimation_error(law: &PmfTable, m: usize) -> f64 {
    0.5 * law
        .probs
        .iter()
        .map(|p| (p * (1.0 - p) / m as f64).sqrt())
        .sum::<f64>()
}

/// Sample moments with standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleMoments {
    pub count: usize,
    pub mean: f64,
    /// Unbiased variance; `None` for a single observation.
    pub variance: Option<f64>,
    /// Standard error of the mean.
    pub se_mean: Option<f64>,
    /// Standard error of the variance, from the fourth central moment.
    pub se_variance: Option<f64>,
    pub skewness: Option<f64>,
}

impl SampleMoments {
    pub fn from_samples(xs: &[f64]) -> Result<Self> {
        let m = xs.len();
        if m == 0 {
            return Err(Error::invalid("no samples"));
        }
        let mf = m as f64;
        let mean = xs.iter().sum::<f64>() / mf;
        if m == 1 {
            return Ok(SampleMoments {
                count: 1,
                mean,
                variance: None,
                se_mean: None,
                se_variance: None,
                skewness: None,
            });
        }
        let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
        for &x in xs {
            let d = x - mean;
            let d2 = d * d;
            m2 += d2;
            m3 += d2 * d;
            m4 += d2 * d2;
        }
        let (c2, c3, c4) = (m2 / mf, m3 / mf, m4 / mf);
        let variance = m2 / (mf - 1.0);
        let se_variance = ((c4 - c2 * c2 * (mf - 3.0) / (mf - 1.0)).max(0.0) / mf).sqrt();
        let skewness = (c2 > 0.0).then(|| c3 / c2.powf(1.5));
        Ok(SampleMoments {
            count: m,
            mean,
            variance: Some(variance),
            se_mean: Some((variance / mf).sqrt()),
            se_variance: Some(se_variance),
            skewness,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(probs: &[f64]) -> PmfTable {
        PmfTable::new((0..probs.len()).collect(), probs.to_vec()).unwrap()
    }

    #[test]
    fn tv_of_identical_laws_is_zero() {
        let p = table(&[0.2, 0.3, 0.5]);
        assert_eq!(tv_distance(&p, &p), 0.0);
    }

    #[test]
    fn tv_of_disjoint_laws_is_one() {
        assert_eq!(
            tv_distance(&PmfTable::point_mass(0), &PmfTable::point_mass(4)),
            1.0
        );
    }

    #[test]
    fn tv_hand_computed() {
        assert_eq!(tv_distance(&table(&[0.5, 0.5]), &table(&[1.0, 0.0])), 0.5);
    }

    #[test]
    fn pmf_table_rejects_unnormalised_mass() {
        assert!(PmfTable::new(vec![0, 1], vec![0.5, 0.4]).is_err());
        assert!(PmfTable::new(vec![1, 0], vec![0.5, 0.5]).is_err());
        assert!(PmfTable::new(vec![0, 1], vec![-0.5, 1.5]).is_err());
    }

    #[test]
    fn ks_all_samples_at_median() {
        let cdf = |x: f64| x.clamp(0.0, 1.0);
        assert!((ks_statistic(&[0.5; 10], cdf).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ks_single_sample_at_top_of_support() {
        let cdf = |x: f64| x.clamp(0.0, 1.0);
        assert_eq!(ks_statistic(&[1.0], cdf).unwrap(), 1.0);
    }

    #[test]
    fn ks_uniform_sample_is_small() {
        use rand::Rng;
        let mut rng = crate::samplers::substream(12, 0);
        let xs: Vec<f64> = (0..10_000).map(|_| rng.random::<f64>()).collect();
        assert!(ks_statistic(&xs, |x| x.clamp(0.0, 1.0)).unwrap() < 0.05);
        assert!(ks_statistic(&[], |x| x).is_err());
    }

    #[test]
    fn chi_square_accepts_matching_counts() {
        let t = chi_square_gof(&[250, 250, 500], &[0.25, 0.25, 0.5]).unwrap();
        assert_eq!(t.statistic, 0.0);
        assert_eq!(t.dof, 2);
        assert!((t.p_value - 1.0).abs() < 1e-12);
        let bad = chi_square_gof(&[500, 0, 500], &[0.25, 0.25, 0.5]).unwrap();
        assert!(bad.p_value < 1e-10);
        assert_eq!(chi_square_gof(&[1, 1], &[1.0, 0.0]).unwrap().p_value, 0.0);
    }

    #[test]
    fn two_sample_chi_square() {
        let same = chi_square_two_sample(&[100, 200, 300], &[100, 200, 300]).unwrap();
        assert_eq!(same.statistic, 0.0);
        let diff = chi_square_two_sample(&[300, 200, 100], &[100, 200, 300]).unwrap();
        assert!(diff.p_value < 1e-10);
    }

    #[test]
    fn poisson_table_tail_accounting() {
        let (t, cut) = poisson_table(3.0, 1e-9).unwrap();
        assert!(cut < 1e-9);
        assert!((t.total() - 1.0).abs() < 1e-12);
        assert!((t.mean() - 3.0).abs() < 1e-6);
    }

    #[test]
    fn sample_moments_single_observation() {
        let s = SampleMoments::from_samples(&[4.0]).unwrap();
        assert_eq!(s.mean, 4.0);
        assert!(s.variance.is_none() && s.se_mean.is_none());
    }
}
