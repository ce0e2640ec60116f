//! Edge-list text format.
//!
//! ```text
//! n m
//! i j      (m lines, 1 <= i < j <= n)
//! ```
//!
//! Fields are whitespace separated and every line ends with `\n`.

use std::io::{BufRead, Write};

use super::{EdgeList, LabeledGraph};
use crate::{Error, Result};

/// Writes 0-based edges as 1-based edge-list text.
pub fn write_edges<W: Write>(mut out: W, n: usize, edges: &[(u32, u32)]) -> std::io::Result<()> {
    writeln!(out, "{} {}", n, edges.len())?;
    for &(i, j) in edges {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        writeln!(out, "{} {}", a + 1, b + 1)?;
    }
    Ok(())
}

pub fn write_edge_list<W: Write>(out: W, g: &LabeledGraph) -> std::io::Result<()> {
    write_edges(out, g.n(), &g.to_edge_list().edges)
}

/// Parses edge-list text. Edges must satisfy `1 <= i < j <= n` and the
/// header count must match.
pub fn read_edge_list<R: BufRead>(input: R) -> Result<EdgeList> {
    let mut lines = input.lines().enumerate();
    let (n, m) = loop {
        let Some((idx, line)) = lines.next() else {
            return Err(Error::Parse {
                line: 1,
                reason: "missing header".into(),
            });
        };
        let line = line.map_err(|e| Error::Parse {
            line: idx + 1,
            reason: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        break parse_pair(&line, idx + 1)?;
    };

    let mut edges = Vec::with_capacity(m);
    for (idx, line) in lines {
        let line = line.map_err(|e| Error::Parse {
            line: idx + 1,
            reason: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let (i, j) = parse_pair(&line, idx + 1)?;
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::Parse {
                line: idx + 1,
                reason: format!("edge {i} {j} violates 1 <= i < j <= {n}"),
            });
        }
        edges.push(((i - 1) as u32, (j - 1) as u32));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 1,
            reason: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Ok(EdgeList::new(n, edges))
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut field = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line: lineno,
                reason: "expected two integers".into(),
            })?
            .parse()
            .map_err(|e: std::num::ParseIntError| Error::Parse {
                line: lineno,
                reason: e.to_string(),
            })
    };
    let a = field()?;
    let b = field()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line: lineno,
            reason: "trailing fields".into(),
        });
    }
    Ok((a, b))
}
