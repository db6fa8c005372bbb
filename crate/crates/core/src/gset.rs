// SPDX-License-Identifier: Apache-2.0

//! G-set MaxCut instances: text format, benchmark registry and the MaxCut
//! to Ising mapping.
//!
//! File format: a header line `N M`, then `M` lines `i j w` with 1-based
//! vertex indices and integer weights, whitespace separated. LF and CRLF
//! line endings are both accepted; blank lines are ignored.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::ising::{IsingModel, SpinState};
use crate::{Error, Result};

/// Undirected graph with integer edge weights. Edges are stored with
/// `i < j`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, i64)>,
}

impl WeightedGraph {
    /// Builds a graph from 0-based edges, rejecting self-loops, out of range
    /// endpoints and repeated pairs in either orientation.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (k, (a, b, w)) in edges.into_iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::InvalidModel(format!(
                    "edge {k}: endpoint {} out of range for {n} vertices",
                    a.max(b)
                )));
            }
            if a == b {
                return Err(Error::InvalidModel(format!("edge {k}: self-loop on vertex {a}")));
            }
            let (i, j) = (a.min(b), a.max(b));
            if !seen.insert((i, j)) {
                return Err(Error::InvalidModel(format!("edge {k}: duplicate pair ({i}, {j})")));
            }
            out.push((i, j, w));
        }
        Ok(WeightedGraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, i64)] {
        &self.edges
    }

    /// `W = Σ w_ij`.
    pub fn total_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Ising model with `J_ij = −w_ij` and no bias, so that
    /// `cut(σ) = (W − H(σ)) / 2`.
    pub fn to_ising(&self) -> Result<IsingModel> {
        let couplings: Vec<(usize, usize, f64)> = self
            .edges
            .iter()
            .map(|&(i, j, w)| (i, j, -(w as f64)))
            .collect();
        IsingModel::new(self.n, &couplings, vec![0.0; self.n])
    }

    /// `Σ w·(1 − σ_iσ_j)/2`: total weight of edges whose endpoints disagree.
    pub fn cut_value(&self, state: &SpinState) -> Result<i64> {
        if state.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                actual: state.len(),
            });
        }
        Ok(self.cut_on(state.as_slice()))
    }

    pub(crate) fn cut_on(&self, spins: &[i8]) -> i64 {
        self.edges
            .iter()
            .filter(|&&(i, j, _)| spins[i] != spins[j])
            .map(|e| e.2)
            .sum()
    }
}

/// Parses a G-set file.
pub fn parse_gset(text: &str) -> Result<WeightedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        reason: "missing header".to_string(),
    })?;
    let head = integers(header_line, header)?;
    let (n, m) = match head.as_slice() {
        [n, m] if *n > 0 && *m >= 0 => (*n as usize, *m as usize),
        _ => {
            return Err(Error::Parse {
                line: header_line,
                reason: format!("malformed header `{}`, expected `N M`", header.trim()),
            })
        }
    };

    let mut seen = BTreeSet::new();
    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let fields = integers(line, text)?;
        let [a, b, w] = fields[..] else {
            return Err(Error::Parse {
                line,
                reason: format!("expected `i j w`, got `{}`", text.trim()),
            });
        };
        if edges.len() == m {
            return Err(Error::Parse {
                line,
                reason: format!("more than the {m} edges declared in the header"),
            });
        }
        let in_range = |v: i64| v >= 1 && v as usize <= n;
        if !in_range(a) || !in_range(b) {
            return Err(Error::Parse {
                line,
                reason: format!("vertex index out of range 1..={n}"),
            });
        }
        if a == b {
            return Err(Error::Parse {
                line,
                reason: format!("self-loop on vertex {a}"),
            });
        }
        let (i, j) = ((a.min(b) - 1) as usize, (a.max(b) - 1) as usize);
        if !seen.insert((i, j)) {
            return Err(Error::Parse {
                line,
                reason: format!("duplicate edge {a} {b}"),
            });
        }
        edges.push((i, j, w));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count().max(1),
            reason: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Ok(WeightedGraph { n, edges })
}

fn integers(line: usize, text: &str) -> Result<Vec<i64>> {
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>().map_err(|_| Error::Parse {
                line,
                reason: format!("not an integer: `{tok}`"),
            })
        })
        .collect()
}

/// A benchmark instance with its best-known cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchmarkEntry {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub target: i64,
}

impl BenchmarkEntry {
    pub fn new(name: impl Into<String>, n: usize, m: usize, target: i64) -> Self {
        BenchmarkEntry {
            name: name.into(),
            n,
            m,
            target,
        }
    }

    /// Checks that a loaded graph has the registered size.
    pub fn validate(&self, graph: &WeightedGraph) -> Result<()> {
        if graph.n() != self.n || graph.m() != self.m {
            return Err(Error::InvalidModel(format!(
                "{} should have n = {}, m = {}, loaded graph has n = {}, m = {}",
                self.name,
                self.n,
                self.m,
                graph.n(),
                graph.m()
            )));
        }
        Ok(())
    }

    /// `cut / target`, unclamped.
    pub fn normalized_cut(&self, cut: i64) -> Result<f64> {
        normalized_cut(cut, self)
    }
}

/// `cut / target`. Values above 1 mean a better cut than the best known.
pub fn normalized_cut(cut: i64, entry: &BenchmarkEntry) -> Result<f64> {
    if entry.target <= 0 {
        return Err(Error::param(
            "target",
            format!("best-known cut for {} must be positive, got {}", entry.name, entry.target),
        ));
    }
    Ok(cut as f64 / entry.target as f64)
}

const REGISTRY: [(&str, usize, usize, i64); 10] = [
    ("G1", 800, 19176, 11624),
    ("G6", 800, 19176, 2178),
    ("G11", 800, 1600, 564),
    ("G14", 800, 4694, 3064),
    ("G18", 800, 4694, 992),
    ("G22", 2000, 19990, 13359),
    ("G34", 2000, 4000, 1384),
    ("G38", 2000, 11779, 7688),
    ("G39", 2000, 11778, 2408),
    ("G47", 1000, 9990, 6657),
];

/// The ten G-set benchmark instances with their best-known cuts.
pub fn registry() -> Vec<BenchmarkEntry> {
    REGISTRY
        .iter()
        .map(|&(name, n, m, target)| BenchmarkEntry::new(name, n, m, target))
        .collect()
}

/// Looks a registry instance up by name, ignoring ASCII case.
pub fn lookup(name: &str) -> Result<BenchmarkEntry> {
    REGISTRY
        .iter()
        .find(|(k, ..)| k.eq_ignore_ascii_case(name))
        .map(|&(name, n, m, target)| BenchmarkEntry::new(name, n, m, target))
        .ok_or_else(|| Error::UnknownBenchmark(name.to_string()))
}
