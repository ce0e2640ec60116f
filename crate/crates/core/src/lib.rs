//! Sampling and analytics for the split-and-drift random graph `G(n, r)`.
//!
//! `G(n, r)` is the stationary law of a Markov chain on graphs with vertex set
//! `{0, .., n-1}`: every vertex duplicates at rate 1 (it replaces a uniformly
//! chosen other vertex, which inherits its closed neighborhood) and every edge
//! disappears at rate `rho = 2r / (n - 1)`.
//!
//! The crate is organised as:
//!
//! - [`graph`]: the labeled graph type, its invariants and the edge-list format.
//! - [`genealogy`]: Kingman coalescent genealogies.
//! - [`samplers`]: forward, backward and CTMC samplers plus the degree chain.
//! - [`analytic`]: closed-form moments, the degree law, limit laws and bounds.
//! - [`stats`]: distances, goodness-of-fit tests, the exact small-`n` solver
//!   and the Monte Carlo ensemble harness.
//! - [`cli`]: the batch command layer behind the `splitdrift` binary.
//!
//! Vertices are 0-based everywhere in the API. Text formats written to disk
//! use 1-based labels.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod genealogy;
pub mod graph;
pub mod samplers;
pub mod stats;

pub use error::{Error, Result};
pub use genealogy::Genealogy;
pub use graph::{EdgeList, LabeledGraph, SummaryStats};
pub use samplers::{ModelParams, SamplerKind};
pub use stats::PmfTable;
