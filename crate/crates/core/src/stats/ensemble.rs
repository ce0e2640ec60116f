//! Monte Carlo ensembles compared against the closed forms.
//!
//! Replicate `j` uses [`substream`]`(seed, j)`. Replicates are processed in
//! fixed-size chunks on the rayon pool and folded back in replicate order,
//! so a report depends only on its inputs and not on the thread count.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    poisson_table, tv_distance, tv_estimation_error, tv_with_truncation, PmfTable, SampleMoments,
};
use crate::analytic::{cc_bounds, classify_regime, degree_pmf, moments, stein_chen_bound, Regime};
use crate::graph::{
    count_complete_subgraphs, count_components, max_clique, AdjacencyRows, EdgeList,
    DEFAULT_WORK_BUDGET,
};
use crate::samplers::{
    default_burn_in, sample_backward_edges, sample_ctmc, sample_forward_edges, substream,
    ModelParams, SamplerKind,
};
use crate::{Error, LabeledGraph, Result};

const CHUNK: usize = 256;

/// Tail mass below which the Poisson reference law is truncated.
const POISSON_TAIL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    /// Orders `k` of the complete-subgraph counts to compare; orders above
    /// `n` are skipped.
    pub subgraph_orders: Vec<usize>,
    /// The clique number is computed when `n <= clique_limit`.
    pub clique_limit: usize,
    /// A z-score comparison passes when `|z| <= z_threshold`.
    pub z_threshold: f64,
    /// A degree-law comparison passes when the TV distance is at most this.
    pub tv_cap: f64,
    /// Required fraction of replicates inside the component-count bracket;
    /// `None` reports the fraction without a verdict.
    pub coverage_target: Option<f64>,
    /// Relative slack applied to both ends of the component-count bracket.
    pub cc_slack: f64,
    /// Events per chain run for the `ctmc` sampler; defaults to
    /// [`default_burn_in`].
    pub ctmc_events: Option<u64>,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        EnsembleConfig {
            subgraph_orders: vec![3],
            clique_limit: 128,
            z_threshold: 3.0,
            tv_cap: 0.01,
            coverage_target: None,
            cc_slack: 0.5,
            ctmc_events: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// No standard error is available (a single replicate).
    NotApplicable,
    /// Reported without a pass/fail criterion.
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StatisticKind {
    ZScore,
    TotalVariation,
    Coverage,
    Ratio,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub quantity: String,
    pub analytic: Option<f64>,
    pub empirical: f64,
    pub kind: StatisticKind,
    pub statistic: Option<f64>,
    pub threshold: Option<f64>,
    pub verdict: Verdict,
}

/// Mean, variance and standard error of one per-replicate invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub mean: f64,
    pub variance: Option<f64>,
    pub standard_error: Option<f64>,
}

impl From<&SampleMoments> for InvariantSummary {
    fn from(m: &SampleMoments) -> Self {
        InvariantSummary {
            mean: m.mean,
            variance: m.variance,
            standard_error: m.se_mean,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub value: usize,
    pub count: u64,
    pub empirical_prob: f64,
    pub analytic_prob: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleReport {
    pub params: ModelParams,
    pub sampler: SamplerKind,
    pub replicates: usize,
    pub seed: u64,
    pub invariants: BTreeMap<String, InvariantSummary>,
    /// Degrees of all vertices pooled over replicates.
    pub degree_histogram: Vec<HistogramRow>,
    pub edge_histogram: Vec<HistogramRow>,
    pub comparisons: Vec<Comparison>,
}

impl EnsembleReport {
    /// True when no comparison failed.
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.verdict != Verdict::Fail)
    }

    pub fn comparison(&self, quantity: &str) -> Option<&Comparison> {
        self.comparisons.iter().find(|c| c.quantity == quantity)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Writes histogram rows as `value,count,empirical_prob,analytic_prob`.
pub fn write_histogram_csv<W: Write>(mut out: W, rows: &[HistogramRow]) -> std::io::Result<()> {
    writeln!(out, "value,count,empirical_prob,analytic_prob")?;
    for row in rows {
        write!(out, "{},{},{}", row.value, row.count, row.empirical_prob)?;
        match row.analytic_prob {
            Some(p) => writeln!(out, ",{p}")?,
            None => writeln!(out, ",")?,
        }
    }
    Ok(())
}

struct Replicate {
    edges: usize,
    first_degree: usize,
    components: usize,
    clique: Option<usize>,
    complete: Vec<u64>,
}

struct Chunk {
    replicates: Vec<Replicate>,
    degree_counts: Vec<u64>,
}

pub fn mc_ensemble(
    params: &ModelParams,
    sampler: SamplerKind,
    replicates: usize,
    seed: u64,
    config: &EnsembleConfig,
) -> Result<EnsembleReport> {
    if replicates == 0 {
        return Err(Error::invalid("replicates must be at least 1"));
    }
    let n = params.n();
    let m = moments(params)?;
    let orders: Vec<usize> = config
        .subgraph_orders
        .iter()
        .copied()
        .filter(|&k| k >= 2 && k <= n)
        .collect();
    let with_clique = n <= config.clique_limit;
    let events = config
        .ctmc_events
        .unwrap_or_else(|| default_burn_in(params));

    let run_one = |j: usize| -> Result<(Replicate, Vec<usize>)> {
        let mut rng = substream(seed, j as u64);
        let list = match sampler {
            SamplerKind::Forward => sample_forward_edges(params, &mut rng),
            SamplerKind::Backward => sample_backward_edges(params, &mut rng),
            SamplerKind::Ctmc => {
                sample_ctmc(params, events, &LabeledGraph::complete(n), &mut rng)?.to_edge_list()
            }
        };
        let degrees = list.degrees();
        let rows =
            (with_clique || !orders.is_empty()).then(|| AdjacencyRows::from_edge_list(&list));
        let clique = match &rows {
            Some(rows) if with_clique => Some(max_clique(rows)),
            _ => None,
        };
        let complete = orders
            .iter()
            .map(|&k| complete_count(&list, rows.as_ref(), k))
            .collect::<Result<Vec<_>>>()?;
        let rep = Replicate {
            edges: list.len(),
            first_degree: degrees[0],
            components: count_components(&list),
            clique,
            complete,
        };
        Ok((rep, degrees))
    };

    let starts: Vec<usize> = (0..replicates).step_by(CHUNK).collect();
    let chunks = starts
        .par_iter()
        .map(|&start| -> Result<Chunk> {
            let mut chunk = Chunk {
                replicates: Vec::with_capacity(CHUNK),
                degree_counts: vec![0; n],
            };
            for j in start..(start + CHUNK).min(replicates) {
                let (rep, degrees) = run_one(j)?;
                for d in degrees {
                    chunk.degree_counts[d] += 1;
                }
                chunk.replicates.push(rep);
            }
            Ok(chunk)
        })
        .collect::<Vec<_>>();

    let mut reps = Vec::with_capacity(replicates);
    let mut degree_counts = vec![0u64; n];
    for chunk in chunks {
        let chunk = chunk?;
        for (total, c) in degree_counts.iter_mut().zip(&chunk.degree_counts) {
            *total += c;
        }
        reps.extend(chunk.replicates);
    }

    let series = |f: &dyn Fn(&Replicate) -> f64| -> Vec<f64> { reps.iter().map(f).collect() };
    let edges = series(&|r| r.edges as f64);
    let mean_degree = series(&|r| 2.0 * r.edges as f64 / n as f64);
    let first_degree = series(&|r| r.first_degree as f64);
    let components = series(&|r| r.components as f64);

    let mut invariants = BTreeMap::new();
    let mut comparisons = Vec::new();

    let edges_m = SampleMoments::from_samples(&edges)?;
    let mean_degree_m = SampleMoments::from_samples(&mean_degree)?;
    let first_degree_m = SampleMoments::from_samples(&first_degree)?;
    let components_m = SampleMoments::from_samples(&components)?;
    invariants.insert("edges".to_string(), (&edges_m).into());
    invariants.insert("mean_degree".to_string(), (&mean_degree_m).into());
    invariants.insert("degree_of_vertex_1".to_string(), (&first_degree_m).into());
    invariants.insert("components".to_string(), (&components_m).into());

    let z = config.z_threshold;
    comparisons.push(z_comparison(
        "mean_edges",
        m.mean_edges,
        edges_m.mean,
        edges_m.se_mean,
        z,
    ));
    comparisons.push(z_comparison(
        "mean_degree",
        m.mean_degree,
        mean_degree_m.mean,
        mean_degree_m.se_mean,
        z,
    ));
    comparisons.push(z_comparison(
        "var_degree",
        m.var_degree,
        first_degree_m.variance.unwrap_or(0.0),
        first_degree_m.se_variance,
        z,
    ));
    for (idx, &k) in orders.iter().enumerate() {
        let xs = series(&|r| r.complete[idx] as f64);
        let xm = SampleMoments::from_samples(&xs)?;
        let name = format!("complete_subgraphs_{k}");
        comparisons.push(z_comparison(
            &name,
            m.mean_complete[&k],
            xm.mean,
            xm.se_mean,
            z,
        ));
        invariants.insert(name, (&xm).into());
    }

    // Degree law, all vertices pooled.
    let degree_law = degree_pmf(params)?;
    let empirical_degrees = PmfTable::from_counts(&degree_counts)?;
    let degree_tv = tv_distance(&empirical_degrees, &degree_law);
    comparisons.push(Comparison {
        quantity: "degree_law_tv".to_string(),
        analytic: None,
        empirical: degree_tv,
        kind: StatisticKind::TotalVariation,
        statistic: Some(degree_tv),
        threshold: Some(config.tv_cap),
        verdict: if replicates < 2 {
            Verdict::NotApplicable
        } else if degree_tv <= config.tv_cap {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
    });

    // Component counts against the asymptotic bracket.
    let cc = cc_bounds(params);
    let (lo, hi) = (
        cc.lower * (1.0 - config.cc_slack),
        cc.upper * (1.0 + config.cc_slack),
    );
    let inside = reps
        .iter()
        .filter(|r| lo <= r.components as f64 && r.components as f64 <= hi)
        .count();
    let coverage = inside as f64 / replicates as f64;
    comparisons.push(Comparison {
        quantity: "components_bracket_coverage".to_string(),
        analytic: None,
        empirical: coverage,
        kind: StatisticKind::Coverage,
        statistic: Some(coverage),
        threshold: config.coverage_target,
        verdict: match config.coverage_target {
            None => Verdict::Report,
            Some(t) if coverage >= t => Verdict::Pass,
            Some(_) => Verdict::Fail,
        },
    });

    // Edge count against Poisson in the sparse zones.
    let mut edge_counts = vec![0u64; reps.iter().map(|r| r.edges).max().unwrap_or(0) + 1];
    for r in &reps {
        edge_counts[r.edges] += 1;
    }
    let sc = stein_chen_bound(params)?;
    let regime = classify_regime(n, params.r()).regime;
    let poisson = if sc.lambda > 0.0 {
        Some(poisson_table(sc.lambda, POISSON_TAIL)?)
    } else {
        None
    };
    if matches!(regime, Regime::Sparse | Regime::EmptyTransition) {
        let (law, cut) = poisson.as_ref().expect("positive lambda");
        let empirical = PmfTable::from_counts(&edge_counts)?;
        let tv = tv_with_truncation(&empirical, law, *cut);
        let threshold = sc.bound + 3.0 * tv_estimation_error(law, replicates);
        comparisons.push(Comparison {
            quantity: "edge_count_poisson_tv".to_string(),
            analytic: Some(sc.bound),
            empirical: tv,
            kind: StatisticKind::TotalVariation,
            statistic: Some(tv),
            threshold: Some(threshold),
            verdict: if tv <= threshold {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        });
    }

    // Probes of the conjectured orders of #CC and the clique number.
    if params.r() > 0.0 {
        comparisons.push(ratio("components_over_r", components_m.mean / params.r()));
        if with_clique {
            let kappa = series(&|r| r.clique.unwrap_or(0) as f64);
            let km = SampleMoments::from_samples(&kappa)?;
            comparisons.push(ratio(
                "clique_number_times_r_over_n",
                km.mean * params.r() / n as f64,
            ));
            invariants.insert("clique_number".to_string(), (&km).into());
        }
    }

    let degree_histogram = degree_counts
        .iter()
        .enumerate()
        .map(|(k, &c)| HistogramRow {
            value: k,
            count: c,
            empirical_prob: empirical_degrees.prob(k),
            analytic_prob: Some(degree_law.prob(k)),
        })
        .collect();
    let edge_total = replicates as f64;
    let edge_histogram = edge_counts
        .iter()
        .enumerate()
        .map(|(k, &c)| HistogramRow {
            value: k,
            count: c,
            empirical_prob: c as f64 / edge_total,
            analytic_prob: poisson
                .as_ref()
                .filter(|_| matches!(regime, Regime::Sparse | Regime::EmptyTransition))
                .map(|(law, _)| law.prob(k)),
        })
        .collect();

    Ok(EnsembleReport {
        params: *params,
        sampler,
        replicates,
        seed,
        invariants,
        degree_histogram,
        edge_histogram,
        comparisons,
    })
}

fn complete_count(list: &EdgeList, rows: Option<&AdjacencyRows>, k: usize) -> Result<u64> {
    if k == 2 {
        return Ok(list.len() as u64);
    }
    count_complete_subgraphs(
        rows.expect("rows built when orders are requested"),
        k,
        DEFAULT_WORK_BUDGET,
    )
}

fn z_comparison(
    quantity: &str,
    analytic: f64,
    empirical: f64,
    se: Option<f64>,
    threshold: f64,
) -> Comparison {
    let diff = empirical - analytic;
    let (statistic, verdict) = match se {
        None => (None, Verdict::NotApplicable),
        Some(se) if se > 0.0 => {
            let z = diff / se;
            (
                Some(z),
                if z.abs() <= threshold {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
            )
        }
        // Every replicate agreed; only an exact match can pass.
        Some(_) => {
            if diff.abs() <= 1e-9 * analytic.abs().max(1.0) {
                (Some(0.0), Verdict::Pass)
            } else {
                (None, Verdict::Fail)
            }
        }
    };
    Comparison {
        quantity: quantity.to_string(),
        analytic: Some(analytic),
        empirical,
        kind: StatisticKind::ZScore,
        statistic,
        threshold: Some(threshold),
        verdict,
    }
}

fn ratio(quantity: &str, value: f64) -> Comparison {
    Comparison {
        quantity: quantity.to_string(),
        analytic: None,
        empirical: value,
        kind: StatisticKind::Ratio,
        statistic: None,
        threshold: None,
        verdict: Verdict::Report,
    }
}
