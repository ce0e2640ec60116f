//! The `splitdrift` command line.
//!
//! Every command resolves its flags into a [`RunConfig`]. With `--out PATH`
//! the primary output goes to `PATH` and the config is written next to it
//! as `PATH.manifest.json` (for `sample`, `PATH` is a directory holding
//! `manifest.json`). Without `--out` the primary output goes to stdout and
//! the config is echoed to stderr. `splitdrift --manifest FILE` reruns a
//! recorded config.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::analytic::{
    cc_bounds, classify_regime, clique_upper_bound, degree_pmf, limit_density, moments,
    stein_chen_bound, LimitLaw,
};
use crate::graph::{
    count_components, greedy_clique, greedy_coloring_bound, max_clique, pair_count, summarize,
    write_edges, AdjacencyRows, EdgeList,
};
use crate::samplers::{
    default_burn_in, sample_backward_edges, sample_ctmc, sample_forward_edges, substream,
    ModelParams, SamplerKind,
};
use crate::stats::{
    chi_square_gof, chi_square_two_sample, exact_stationary_small_n, mc_ensemble, EnsembleConfig,
    EnsembleReport, MAX_EXACT_N,
};
use crate::{Error, LabeledGraph, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Edge density below which `sample` never builds an adjacency matrix.
const STREAM_DENSITY: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Sample,
    Pmf,
    Moments,
    Regime,
    CcBounds,
    SteinChen,
    Validate,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Edgelist,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LimitKind {
    Beta,
    Exp,
    Geom,
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub n: usize,
    /// Canonical rate; when `rho` was given this is `rho (n - 1) / 2`.
    pub r: f64,
    /// The `--rho` value as given, if any.
    pub rho: Option<f64>,
    pub sampler: SamplerKind,
    pub replicates: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
    pub clique_limit: usize,
    pub subgraph_orders: Vec<usize>,
    /// Chain events per graph for the `ctmc` sampler.
    pub events: Option<u64>,
    pub limit: Option<LimitKind>,
    pub exact: bool,
    pub tv_cap: f64,
    pub inject_bug: bool,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn params(&self) -> Result<ModelParams> {
        ModelParams::new(self.n, self.r)
    }

    fn manifest_path(&self) -> Option<PathBuf> {
        let out = self.out.as_ref()?;
        Some(match self.command {
            CommandKind::Sample => out.join("manifest.json"),
            _ => {
                let mut s = out.clone().into_os_string();
                s.push(".manifest.json");
                PathBuf::from(s)
            }
        })
    }
}

/// Per-graph entry of a `sample` manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub file: String,
    pub edges: usize,
    pub components: usize,
    pub clique_number: Option<usize>,
    /// (greedy clique, greedy coloring) when the exact search was skipped.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clique_bracket: Option<(usize, usize)>,
    /// Smallest order whose expected complete-subgraph count is below 1%.
    pub clique_analytic_bound: usize,
    pub complete_counts: BTreeMap<usize, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub graphs: Vec<GraphSummary>,
}

#[derive(Debug, Parser)]
#[command(
    name = "splitdrift",
    version,
    about = "Sampling and analytics for split-and-drift random graphs"
)]
pub struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Rerun the config recorded in a manifest.
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,
    /// Output path override for `--manifest`.
    #[arg(long, value_name = "PATH", requires = "manifest")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long)]
    n: usize,
    /// Rescaled removal rate.
    #[arg(long, required_unless_present = "rho", conflicts_with = "rho")]
    r: Option<f64>,
    /// Per-edge removal rate, converted to r = rho (n - 1) / 2.
    #[arg(long)]
    rho: Option<f64>,
}

#[derive(Debug, Args)]
struct OutArgs {
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw graphs and write them as edge lists.
    Sample {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = SamplerKind::Backward)]
        sampler: SamplerKind,
        #[arg(long, default_value_t = 1)]
        replicates: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 64)]
        clique_limit: usize,
        #[arg(long, value_delimiter = ',')]
        subgraph_orders: Vec<usize>,
        /// Chain events per graph for the ctmc sampler.
        #[arg(long)]
        events: Option<u64>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Exact degree law of a fixed vertex as `k,prob` rows.
    Pmf {
        #[command(flatten)]
        params: ParamArgs,
        /// Append the matching limit density.
        #[arg(long, value_enum)]
        limit: Option<LimitKind>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Closed-form moments.
    Moments {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Regime label and the ratios behind it.
    Regime {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Asymptotic bracket for the number of connected components.
    CcBounds {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Poisson approximation bound for the edge count.
    SteinChen {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Monte Carlo and exact checks; exits 1 if any check fails.
    Validate {
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, conflicts_with = "rho")]
        r: Option<f64>,
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long, value_enum, default_value_t = SamplerKind::Forward)]
        sampler: SamplerKind,
        #[arg(long, default_value_t = 100_000)]
        replicates: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 64)]
        clique_limit: usize,
        #[arg(long, value_delimiter = ',', default_value = "3")]
        subgraph_orders: Vec<usize>,
        #[arg(long)]
        events: Option<u64>,
        /// Compare the forward and backward samplers with the exact law (n <= 4).
        #[arg(long)]
        exact: bool,
        /// Cap on the degree-law TV distance.
        #[arg(long, default_value_t = 0.01)]
        tv_cap: f64,
        /// Negative control: use a wrong edge-probability constant.
        #[arg(long)]
        inject_bug: bool,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Exact stationary law over all labeled graphs (n <= 4).
    Oracle {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
    },
}

fn resolve_rate(n: usize, r: Option<f64>, rho: Option<f64>) -> Result<(f64, Option<f64>)> {
    match (r, rho) {
        (Some(r), None) => Ok((r, None)),
        (None, Some(rho)) => Ok((ModelParams::from_rho(n, rho)?.r(), Some(rho))),
        _ => Err(Error::invalid("give exactly one of --r and --rho")),
    }
}

fn base_config(
    command: CommandKind,
    n: usize,
    r: f64,
    rho: Option<f64>,
    out: OutArgs,
    default: OutputFormat,
) -> RunConfig {
    RunConfig {
        command,
        n,
        r,
        rho,
        sampler: SamplerKind::Backward,
        replicates: 1,
        seed: 0,
        out: out.out,
        format: out.format.unwrap_or(default),
        clique_limit: 0,
        subgraph_orders: Vec::new(),
        events: None,
        limit: None,
        exact: false,
        tv_cap: 0.0,
        inject_bug: false,
        threads: None,
    }
}

impl Cli {
    /// Turns parsed arguments into a config, reading the manifest if asked.
    pub fn into_config(self) -> Result<RunConfig> {
        let threads = self.threads;
        let mut config = match (self.manifest, self.command) {
            (Some(_), Some(_)) => {
                return Err(Error::invalid(
                    "--manifest cannot be combined with a subcommand",
                ))
            }
            (Some(path), None) => {
                let text = fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
                let manifest: Manifest = serde_json::from_str(&text)?;
                let mut config = manifest.config;
                if self.out.is_some() {
                    config.out = self.out;
                }
                config
            }
            (None, Some(command)) => command_config(command)?,
            (None, None) => return Err(Error::invalid("a subcommand or --manifest is required")),
        };
        if threads.is_some() {
            config.threads = threads;
        }
        Ok(config)
    }
}

fn command_config(command: Command) -> Result<RunConfig> {
    let simple = |kind, p: ParamArgs, out, default| -> Result<RunConfig> {
        let (r, rho) = resolve_rate(p.n, p.r, p.rho)?;
        Ok(base_config(kind, p.n, r, rho, out, default))
    };
    Ok(match command {
        Command::Sample {
            params,
            sampler,
            replicates,
            seed,
            clique_limit,
            subgraph_orders,
            events,
            out,
        } => {
            let mut c = simple(CommandKind::Sample, params, out, OutputFormat::Edgelist)?;
            c.sampler = sampler;
            c.replicates = replicates;
            c.seed = seed.unwrap_or_else(rand::random);
            c.clique_limit = clique_limit;
            c.subgraph_orders = subgraph_orders;
            c.events = events;
            c
        }
        Command::Pmf { params, limit, out } => {
            let mut c = simple(CommandKind::Pmf, params, out, OutputFormat::Csv)?;
            c.limit = limit;
            c
        }
        Command::Moments { params, out } => {
            simple(CommandKind::Moments, params, out, OutputFormat::Json)?
        }
        Command::Regime { params, out } => {
            simple(CommandKind::Regime, params, out, OutputFormat::Json)?
        }
        Command::CcBounds { params, out } => {
            simple(CommandKind::CcBounds, params, out, OutputFormat::Json)?
        }
        Command::SteinChen { params, out } => {
            simple(CommandKind::SteinChen, params, out, OutputFormat::Json)?
        }
        Command::Oracle { params, out } => {
            simple(CommandKind::Oracle, params, out, OutputFormat::Json)?
        }
        Command::Validate {
            n,
            r,
            rho,
            sampler,
            replicates,
            seed,
            clique_limit,
            subgraph_orders,
            events,
            exact,
            tv_cap,
            inject_bug,
            out,
        } => {
            let (r, rho) = match (r, rho) {
                (None, None) => (2.0, None),
                (r, rho) => resolve_rate(n, r, rho)?,
            };
            let mut c = base_config(
                CommandKind::Validate,
                n,
                r,
                rho,
                OutArgs { out, format: None },
                OutputFormat::Json,
            );
            c.sampler = sampler;
            c.replicates = replicates;
            c.seed = seed.unwrap_or_else(rand::random);
            c.clique_limit = clique_limit;
            c.subgraph_orders = subgraph_orders;
            c.events = events;
            c.exact = exact;
            c.tv_cap = tv_cap;
            c.inject_bug = inject_bug;
            c
        }
    })
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub config: RunConfig,
    /// False when `validate` found a failing check.
    pub passed: bool,
}

/// Runs a resolved config on a pool of `config.threads` workers.
pub fn run(config: RunConfig) -> Result<Outcome> {
    if config.replicates == 0 {
        return Err(Error::invalid("replicates must be at least 1"));
    }
    config.params()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| Error::invalid(e.to_string()))?;
    pool.install(|| dispatch(config))
}

fn dispatch(config: RunConfig) -> Result<Outcome> {
    let mut graphs = Vec::new();
    let mut passed = true;
    let primary = match config.command {
        CommandKind::Sample => {
            graphs = cmd_sample(&config)?;
            None
        }
        CommandKind::Pmf => Some(cmd_pmf(&config)?),
        CommandKind::Moments => Some(render(&config, &moments(&config.params()?)?)?),
        CommandKind::Regime => Some(render(&config, &classify_regime(config.n, config.r))?),
        CommandKind::CcBounds => Some(render(&config, &cc_bounds(&config.params()?))?),
        CommandKind::SteinChen => Some(render(&config, &stein_chen_bound(&config.params()?)?)?),
        CommandKind::Oracle => Some(cmd_oracle(&config)?),
        CommandKind::Validate => {
            let report = cmd_validate(&config)?;
            passed = report.passed;
            Some(serde_json::to_string_pretty(&report)? + "\n")
        }
    };
    if let Some(text) = primary {
        match &config.out {
            Some(path) => write_file(path, text.as_bytes())?,
            None => io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| Error::io(Path::new("<stdout>"), e))?,
        }
    }
    let manifest = Manifest {
        config: config.clone(),
        graphs,
    };
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    match config.manifest_path() {
        Some(path) => write_file(&path, text.as_bytes())?,
        None => eprint!("{text}"),
    }
    Ok(Outcome { config, passed })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Serializes a value as pretty JSON, or as `key,value` rows of its
/// top-level scalar fields for `--format csv`.
fn render<T: Serialize>(config: &RunConfig, value: &T) -> Result<String> {
    let json = serde_json::to_value(value)?;
    match config.format {
        OutputFormat::Csv => {
            let mut s = String::from("key,value\n");
            flatten(&json, "", &mut s);
            Ok(s)
        }
        OutputFormat::Json => Ok(serde_json::to_string_pretty(&json)? + "\n"),
        OutputFormat::Edgelist => Err(Error::invalid("edgelist output only applies to sample")),
    }
}

fn flatten(v: &serde_json::Value, prefix: &str, out: &mut String) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(v, &key, out);
            }
        }
        serde_json::Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(v, &format!("{prefix}.{i}"), out);
            }
        }
        serde_json::Value::String(s) => out.push_str(&format!("{prefix},{s}\n")),
        other => out.push_str(&format!("{prefix},{other}\n")),
    }
}

fn sample_one(config: &RunConfig, params: &ModelParams, index: usize) -> Result<EdgeList> {
    let mut rng = substream(config.seed, index as u64);
    Ok(match config.sampler {
        SamplerKind::Forward => sample_forward_edges(params, &mut rng),
        SamplerKind::Backward => sample_backward_edges(params, &mut rng),
        SamplerKind::Ctmc => {
            let events = config.events.unwrap_or_else(|| default_burn_in(params));
            sample_ctmc(
                params,
                events,
                &LabeledGraph::complete(params.n()),
                &mut rng,
            )?
            .to_edge_list()
        }
    })
}

/// Tail used for the analytic clique bound in `sample` manifests.
const CLIQUE_TAIL: f64 = 0.01;
/// Largest sparse graph that gets bitset rows without being asked for counts.
const SPARSE_ROWS_MAX: usize = 20_000;

fn graph_summary(config: &RunConfig, list: &EdgeList, file: String) -> Result<GraphSummary> {
    let n = list.n;
    let density = if n < 2 {
        1.0
    } else {
        list.len() as f64 / pair_count(n) as f64
    };
    let sparse = density < STREAM_DENSITY;
    let analytic_bound = clique_upper_bound(&config.params()?, CLIQUE_TAIL)?;
    if !sparse {
        let s = summarize(
            &list.to_graph()?,
            config.clique_limit,
            &config.subgraph_orders,
        )?;
        return Ok(GraphSummary {
            file,
            edges: s.edges,
            components: s.num_components,
            clique_number: s.clique_number,
            clique_bracket: s.clique_bracket,
            clique_analytic_bound: analytic_bound,
            complete_counts: s.complete_counts,
        });
    }
    // Sparse graphs stay as edge lists; bitsets only when explicitly needed.
    let needs_rows = n <= SPARSE_ROWS_MAX || !config.subgraph_orders.is_empty();
    let rows = needs_rows.then(|| AdjacencyRows::from_edge_list(list));
    let mut complete_counts = BTreeMap::new();
    for &k in &config.subgraph_orders {
        if k < 2 || k > n {
            return Err(Error::OrderOutOfRange { k, n });
        }
        let count = if k == 2 {
            list.len() as u64
        } else {
            crate::graph::count_complete_subgraphs(
                rows.as_ref().expect("rows"),
                k,
                crate::graph::DEFAULT_WORK_BUDGET,
            )?
        };
        complete_counts.insert(k, count);
    }
    Ok(GraphSummary {
        file,
        edges: list.len(),
        components: count_components(list),
        clique_number: rows
            .as_ref()
            .filter(|_| n <= config.clique_limit)
            .map(max_clique),
        clique_bracket: rows
            .as_ref()
            .filter(|_| n > config.clique_limit)
            .map(|rows| (greedy_clique(rows), greedy_coloring_bound(rows))),
        clique_analytic_bound: analytic_bound,
        complete_counts,
    })
}

fn cmd_sample(config: &RunConfig) -> Result<Vec<GraphSummary>> {
    let params = config.params()?;
    let dir = config.out.clone();
    if let Some(dir) = &dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let width = config.replicates.to_string().len().max(4);
    let mut summaries = Vec::with_capacity(config.replicates);
    let mut json_graphs = Vec::new();
    let mut combined = String::new();
    let stdout = io::stdout();
    for j in 0..config.replicates {
        let list = sample_one(config, &params, j)?;
        let name = match config.format {
            OutputFormat::Edgelist => format!("graph_{:0width$}.edgelist", j + 1),
            OutputFormat::Json => "graphs.json".to_string(),
            OutputFormat::Csv => "graphs.csv".to_string(),
        };
        summaries.push(graph_summary(config, &list, name.clone())?);
        match config.format {
            OutputFormat::Edgelist => match &dir {
                Some(dir) => {
                    let path = dir.join(&name);
                    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
                    let mut w = BufWriter::new(file);
                    write_edges(&mut w, list.n, &list.edges)
                        .and_then(|_| w.flush())
                        .map_err(|e| Error::io(&path, e))?;
                }
                None => {
                    let mut w = stdout.lock();
                    write_edges(&mut w, list.n, &list.edges)
                        .and_then(|_| writeln!(w))
                        .map_err(|e| Error::io(Path::new("<stdout>"), e))?;
                }
            },
            OutputFormat::Json => json_graphs.push(serde_json::json!({
                "n": list.n,
                "edges": list.edges.iter().map(|&(i, k)| [i + 1, k + 1]).collect::<Vec<_>>(),
            })),
            OutputFormat::Csv => {
                if j == 0 {
                    combined.push_str("graph,i,j\n");
                }
                for &(a, b) in &list.edges {
                    combined.push_str(&format!("{},{},{}\n", j + 1, a + 1, b + 1));
                }
            }
        }
    }
    let tail = match config.format {
        OutputFormat::Edgelist => None,
        OutputFormat::Json => Some(serde_json::to_string_pretty(&json_graphs)? + "\n"),
        OutputFormat::Csv => Some(combined),
    };
    if let Some(text) = tail {
        match &dir {
            Some(dir) => write_file(&dir.join(&summaries[0].file), text.as_bytes())?,
            None => print!("{text}"),
        }
    }
    Ok(summaries)
}

fn cmd_pmf(config: &RunConfig) -> Result<String> {
    let params = config.params()?;
    let law = degree_pmf(&params)?;
    let n = params.n() as f64;
    let limit = match config.limit {
        None => None,
        Some(LimitKind::Beta) => Some(LimitLaw::Beta { r: params.r() }),
        Some(LimitKind::Exp) => Some(LimitLaw::SizeBiasedExponential),
        Some(LimitKind::Geom) => Some(LimitLaw::SizeBiasedGeometric {
            rho: params
                .rho()
                .ok_or_else(|| Error::invalid("the geometric limit needs n >= 2"))?,
        }),
    };
    // Limit column: Beta density at k/n, exponential density at k r/n,
    // geometric pmf of D + 1 at k + 1.
    let limit_at = |k: usize| -> Result<f64> {
        let k = k as f64;
        match limit.expect("checked") {
            l @ LimitLaw::Beta { .. } => limit_density(l, k / n),
            l @ LimitLaw::SizeBiasedExponential => limit_density(l, k * params.r() / n),
            l @ LimitLaw::SizeBiasedGeometric { .. } => limit_density(l, k + 1.0),
        }
    };
    match config.format {
        OutputFormat::Csv => {
            let mut s = String::from(if limit.is_some() {
                "k,prob,limit\n"
            } else {
                "k,prob\n"
            });
            for (k, p) in law.iter() {
                if limit.is_some() {
                    s.push_str(&format!("{k},{p},{}\n", limit_at(k)?));
                } else {
                    s.push_str(&format!("{k},{p}\n"));
                }
            }
            Ok(s)
        }
        OutputFormat::Json => {
            let rows = law
                .iter()
                .map(|(k, p)| {
                    let lim = if limit.is_some() {
                        Some(limit_at(k)?)
                    } else {
                        None
                    };
                    Ok(serde_json::json!({"k": k, "prob": p, "limit": lim}))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(serde_json::to_string_pretty(&rows)? + "\n")
        }
        OutputFormat::Edgelist => Err(Error::invalid("edgelist output only applies to sample")),
    }
}

fn cmd_oracle(config: &RunConfig) -> Result<String> {
    let law = exact_stationary_small_n(&config.params()?)?;
    match config.format {
        OutputFormat::Csv => {
            let mut s = String::from("code,edges,prob\n");
            for (g, p) in law.graphs() {
                let edges: Vec<String> = g
                    .edges()
                    .map(|(i, j)| format!("{}-{}", i + 1, j + 1))
                    .collect();
                s.push_str(&format!(
                    "{},{},{p}\n",
                    g.state_code().expect("small"),
                    edges.join(" ")
                ));
            }
            Ok(s)
        }
        OutputFormat::Json => {
            let states: Vec<_> = law
                .graphs()
                .map(|(g, p)| {
                    serde_json::json!({
                        "code": g.state_code(),
                        "edges": g.edges().map(|(i, j)| [i + 1, j + 1]).collect::<Vec<_>>(),
                        "prob": p,
                    })
                })
                .collect();
            let p_edge = if config.n >= 2 {
                Some(law.p_edge(0, 1))
            } else {
                None
            };
            let value = serde_json::json!({
                "n": config.n,
                "r": config.r,
                "p_edge": p_edge,
                "p_complete": law.p_complete(),
                "states": states,
            });
            Ok(serde_json::to_string_pretty(&value)? + "\n")
        }
        OutputFormat::Edgelist => Err(Error::invalid("edgelist output only applies to sample")),
    }
}

/// One deterministic check of `validate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub reference: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
    pub ensemble: EnsembleReport,
}

fn check(name: String, value: f64, reference: f64, tolerance: f64) -> Check {
    Check {
        passed: (value - reference).abs() <= tolerance,
        name,
        value,
        reference,
        tolerance,
    }
}

/// Checks a p-value stays above `1e-3`.
fn p_value_check(name: String, p: f64) -> Check {
    Check {
        passed: p > 1e-3,
        name,
        value: p,
        reference: 1e-3,
        tolerance: 0.0,
    }
}

fn cmd_validate(config: &RunConfig) -> Result<ValidationReport> {
    let mut checks = Vec::new();

    // Closed forms against the exact solver on three vertices.
    for r in [0.1, 1.0, 10.0] {
        let p = ModelParams::new(3, r)?;
        let law = exact_stationary_small_n(&p)?;
        let p_edge = if config.inject_bug {
            1.0 / (2.0 + r)
        } else {
            1.0 / (1.0 + r)
        };
        let tol = 1e-10;
        checks.push(check(
            format!("oracle_p_edge_r{r}"),
            law.p_edge(0, 1),
            p_edge,
            tol * p_edge,
        ));
        let pc = p_edge * p_edge;
        checks.push(check(
            format!("oracle_p_complete_r{r}"),
            law.p_complete(),
            pc,
            tol * pc,
        ));
        let cov = r / ((3.0 + 2.0 * r) * (1.0 + r).powi(2));
        checks.push(check(
            format!("oracle_cov_shared_r{r}"),
            law.edge_covariance((0, 1), (0, 2)),
            cov,
            tol * cov,
        ));
    }

    let params = config.params()?;
    let law = degree_pmf(&params)?;
    let m = moments(&params)?;
    checks.push(check("pmf_mass".into(), law.total(), 1.0, 1e-12));
    checks.push(check(
        "pmf_mean".into(),
        law.mean(),
        m.mean_degree,
        1e-8 * m.mean_degree.max(1e-300),
    ));
    checks.push(check(
        "pmf_variance".into(),
        law.variance(),
        m.var_degree,
        1e-8 * m.var_degree.max(1e-300),
    ));

    if config.exact {
        if config.n > MAX_EXACT_N || config.n < 2 {
            return Err(Error::StateSpaceTooLarge {
                n: config.n,
                max: MAX_EXACT_N,
            });
        }
        let exact = exact_stationary_small_n(&params)?;
        let states = exact.probs().len();
        let mut counts = Vec::new();
        for (k, kind) in [SamplerKind::Forward, SamplerKind::Backward]
            .into_iter()
            .enumerate()
        {
            let c = RunConfig {
                sampler: kind,
                seed: config.seed.wrapping_add(k as u64),
                ..config.clone()
            };
            let mut hist = vec![0u64; states];
            for j in 0..config.replicates {
                let g = sample_one(&c, &params, j)?.to_graph()?;
                hist[g.state_code().expect("small") as usize] += 1;
            }
            let gof = chi_square_gof(&hist, exact.probs())?;
            checks.push(p_value_check(format!("exact_gof_{kind}"), gof.p_value));
            counts.push(hist);
        }
        let two = chi_square_two_sample(&counts[0], &counts[1])?;
        checks.push(p_value_check(
            "exact_forward_vs_backward".into(),
            two.p_value,
        ));
    }

    let ensemble_config = EnsembleConfig {
        subgraph_orders: config.subgraph_orders.clone(),
        clique_limit: config.clique_limit,
        tv_cap: config.tv_cap,
        ctmc_events: config.events,
        ..EnsembleConfig::default()
    };
    let ensemble = mc_ensemble(
        &params,
        config.sampler,
        config.replicates,
        config.seed,
        &ensemble_config,
    )?;
    let passed = checks.iter().all(|c| c.passed) && ensemble.passed();
    Ok(ValidationReport {
        passed,
        checks,
        ensemble,
    })
}

/// Maps an error to the documented exit code.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match cli.into_config().and_then(run) {
        Ok(outcome) if outcome.passed => EXIT_OK,
        Ok(_) => EXIT_VALIDATION,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(args: &[&str]) -> RunConfig {
        let mut full = vec!["splitdrift"];
        full.extend_from_slice(args);
        Cli::try_parse_from(full).unwrap().into_config().unwrap()
    }

    #[test]
    fn rho_resolves_to_r() {
        let a = config(&["moments", "--n", "3", "--rho", "1"]);
        let b = config(&["moments", "--n", "3", "--r", "1"]);
        assert_eq!(a.r, b.r);
        assert_eq!(a.rho, Some(1.0));
    }

    #[test]
    fn r_and_rho_conflict() {
        assert!(Cli::try_parse_from([
            "splitdrift",
            "moments",
            "--n",
            "3",
            "--r",
            "1",
            "--rho",
            "1"
        ])
        .is_err());
        assert!(Cli::try_parse_from(["splitdrift", "moments", "--n", "3"]).is_err());
    }

    #[test]
    fn seed_is_defaulted_and_recorded() {
        let c = config(&["sample", "--n", "3", "--r", "1"]);
        let d = config(&["sample", "--n", "3", "--r", "1"]);
        assert_ne!(c.seed, d.seed);
    }

    #[test]
    fn manifest_roundtrip() {
        let c = config(&["pmf", "--n", "5", "--r", "0.3", "--limit", "beta"]);
        let m = Manifest {
            config: c.clone(),
            graphs: Vec::new(),
        };
        let back: Manifest = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back.config, c);
    }

    #[test]
    fn pmf_rows_for_two_vertices() {
        let c = config(&["pmf", "--n", "2", "--r", "1"]);
        assert_eq!(cmd_pmf(&c).unwrap(), "k,prob\n0,0.5\n1,0.5\n");
    }

    #[test]
    fn csv_flattening() {
        let mut s = String::new();
        flatten(&serde_json::json!({"a": 1, "b": {"c": [2, 3]}}), "", &mut s);
        assert_eq!(s, "a,1\nb.c.0,2\nb.c.1,3\n");
    }

    #[test]
    fn io_errors_map_to_exit_three() {
        let e = Error::io(Path::new("/x"), io::Error::other("boom"));
        assert_eq!(exit_code(&e), EXIT_IO);
        assert_eq!(exit_code(&Error::invalid("bad")), EXIT_USAGE);
    }
}
