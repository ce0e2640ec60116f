//! Kingman coalescent genealogies.
//!
//! A genealogy of `n` vertices is a sequence of `n - 1` epochs. During epoch
//! `l` (0-based) there are `k = n - l` blocks; the epoch lasts an `Exp(C(k, 2))`
//! time and ends when a uniformly chosen pair of blocks merges.
//!
//! Blocks are named by their smallest vertex, so a merge of blocks `a < b`
//! keeps the name `a` and retires `b`. A block name is retired at most once,
//! which makes membership lookups a walk up a small merge tree.

use std::io::Write;

use rand::Rng;
use rand_distr::{Distribution, Exp};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Epoch {
    pub duration: f64,
    /// Merging blocks `(kept, retired)`, with `kept < retired`.
    pub merge: (usize, usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Genealogy {
    n: usize,
    epochs: Vec<Epoch>,
    /// Epoch at whose end block `v` was retired (`usize::MAX` for the root).
    retired_at: Vec<usize>,
    /// Block that absorbed block `v`.
    absorbed_into: Vec<usize>,
}

impl Genealogy {
    /// Builds a genealogy from explicit epochs, checking that every merge
    /// names two live blocks.
    pub fn from_epochs(n: usize, epochs: Vec<Epoch>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("a genealogy needs at least one vertex"));
        }
        if epochs.len() != n - 1 {
            return Err(Error::invalid(format!(
                "expected {} epochs, got {}",
                n - 1,
                epochs.len()
            )));
        }
        let mut retired_at = vec![usize::MAX; n];
        let mut absorbed_into: Vec<usize> = (0..n).collect();
        for (l, e) in epochs.iter().enumerate() {
            let (a, b) = e.merge;
            if !(a < b && b < n) || retired_at[a] != usize::MAX || retired_at[b] != usize::MAX {
                return Err(Error::invalid(format!(
                    "epoch {l}: invalid merge ({a}, {b})"
                )));
            }
            if !(e.duration > 0.0 && e.duration.is_finite()) {
                return Err(Error::invalid(format!("epoch {l}: non-positive duration")));
            }
            retired_at[b] = l;
            absorbed_into[b] = a;
        }
        Ok(Genealogy {
            n,
            epochs,
            retired_at,
            absorbed_into,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn epochs(&self) -> &[Epoch] {
        &self.epochs
    }

    /// Block containing `v` after the first `level` epochs have ended.
    pub fn block_of(&self, mut v: usize, level: usize) -> usize {
        while self.retired_at[v] < level {
            v = self.absorbed_into[v];
        }
        v
    }

    /// The partition of the vertices into blocks after `level` epochs,
    /// each block sorted, blocks ordered by name.
    pub fn blocks_at(&self, level: usize) -> Vec<Vec<usize>> {
        let mut by_name: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for v in 0..self.n {
            by_name[self.block_of(v, level)].push(v);
        }
        by_name.into_iter().filter(|b| !b.is_empty()).collect()
    }

    /// Index of the epoch that ends with `i` and `j` in the same block.
    pub fn coalescence_epoch(&self, i: usize, j: usize) -> Result<usize> {
        if i == j {
            return Err(Error::invalid("coalescence time of a vertex with itself"));
        }
        if i >= self.n || j >= self.n {
            return Err(Error::invalid(format!(
                "vertex out of range for n = {}",
                self.n
            )));
        }
        let (mut a, mut b) = (i, j);
        loop {
            // Advance whichever lineage is retired first; the merge that makes
            // the names equal is the coalescence.
            let (ta, tb) = (self.retired_at[a], self.retired_at[b]);
            let epoch = ta.min(tb);
            if ta <= tb {
                a = self.absorbed_into[a];
            } else {
                b = self.absorbed_into[b];
            }
            if a == b {
                return Ok(epoch);
            }
        }
    }

    /// `T_ij`: time until `i` and `j` first share a block.
    pub fn pair_coalescence_time(&self, i: usize, j: usize) -> Result<f64> {
        let l = self.coalescence_epoch(i, j)?;
        Ok(self.epochs[..=l].iter().map(|e| e.duration).sum())
    }

    /// Time to the most recent common ancestor of all vertices.
    pub fn height(&self) -> f64 {
        self.epochs.iter().map(|e| e.duration).sum()
    }

    /// Sum of all branch lengths: epoch durations weighted by live blocks.
    pub fn total_branch_length(&self) -> f64 {
        self.epochs
            .iter()
            .enumerate()
            .map(|(l, e)| (self.n - l) as f64 * e.duration)
            .sum()
    }

    /// Debug dump: one `duration block_a block_b` line per epoch (1-based).
    pub fn write_dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for e in &self.epochs {
            writeln!(out, "{} {} {}", e.duration, e.merge.0 + 1, e.merge.1 + 1)?;
        }
        Ok(())
    }
}

/// Samples a Kingman coalescent genealogy of `n` vertices.
pub fn sample_kingman<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Genealogy> {
    if n == 0 {
        return Err(Error::invalid("a genealogy needs at least one vertex"));
    }
    let mut alive: Vec<usize> = (0..n).collect();
    let mut epochs = Vec::with_capacity(n - 1);
    let mut retired_at = vec![usize::MAX; n];
    let mut absorbed_into: Vec<usize> = (0..n).collect();
    while alive.len() > 1 {
        let k = alive.len();
        let rate = (k * (k - 1) / 2) as f64;
        let duration = Exp::new(rate).expect("positive rate").sample(rng);
        let ia = rng.random_range(0..k);
        let mut ib = rng.random_range(0..k - 1);
        if ib >= ia {
            ib += 1;
        }
        let (x, y) = (alive[ia], alive[ib]);
        let (kept, retired) = if x < y { (x, y) } else { (y, x) };
        let pos = if alive[ia] == retired { ia } else { ib };
        alive.swap_remove(pos);
        retired_at[retired] = epochs.len();
        absorbed_into[retired] = kept;
        epochs.push(Epoch {
            duration,
            merge: (kept, retired),
        });
    }
    Ok(Genealogy {
        n,
        epochs,
        retired_at,
        absorbed_into,
    })
}
