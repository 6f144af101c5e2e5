//! Z_d-weighted simple graphs and the structural predicates on them.
//!
//! A [`WeightedGraph`] stores a symmetric adjacency matrix with zero diagonal
//! and entries reduced into `[0, d)`. Degrees and the total weight are kept
//! as plain integers so divisibility by `d` is tested exactly.

mod classify;
mod enumerate;
mod family;
mod io;

pub use classify::{classify_ghz, FailureReason, GhzReport, PrimaryWitness};
pub use enumerate::{canonical_form, enumerate_ghz_graphs, GhzEnumerator, MAX_DEDUP_VERTICES};
pub use family::{make_family, Family};
pub use io::GraphFile;

use itertools::Itertools;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::zd;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedGraph {
    d: u32,
    n: usize,
    adj: Vec<u32>,
}

impl WeightedGraph {
    /// The edgeless graph on `n` vertices.
    pub fn new(d: u32, n: usize) -> Result<Self> {
        zd::check_modulus(d)?;
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Self {
            d,
            n,
            adj: vec![0; n * n],
        })
    }

    /// Builds a graph from `(u, v, w)` triples. Each unordered pair may
    /// appear once; weights are reduced mod `d`.
    pub fn from_edges(d: u32, n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = Self::new(d, n)?;
        let mut seen = vec![false; n * n];
        for (index, &(u, v, w)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::InvalidEdge {
                    index,
                    reason: format!("endpoint out of range for n = {n}"),
                });
            }
            if u == v {
                return Err(Error::InvalidEdge {
                    index,
                    reason: "self-loop".into(),
                });
            }
            let key = u.min(v) * n + u.max(v);
            if std::mem::replace(&mut seen[key], true) {
                return Err(Error::InvalidEdge {
                    index,
                    reason: format!("pair ({}, {}) listed twice", u.min(v), u.max(v)),
                });
            }
            g.put(u, v, w % d);
        }
        Ok(g)
    }

    /// Builds a graph from a full matrix, which must be symmetric with zero diagonal.
    pub fn from_matrix(d: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut g = Self::new(d, n)?;
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row {u} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (v, &w) in row.iter().enumerate() {
                if w % d != rows[v][u] % d {
                    return Err(Error::InvalidEdge {
                        index: u * n + v,
                        reason: format!("matrix not symmetric at ({u}, {v})"),
                    });
                }
                if u == v && w % d != 0 {
                    return Err(Error::InvalidEdge {
                        index: u * n + v,
                        reason: format!("nonzero diagonal at vertex {u}"),
                    });
                }
                g.adj[u * n + v] = w % d;
            }
        }
        Ok(g)
    }

    pub(crate) fn from_edge_weights(d: u32, n: usize, weights: &[u32]) -> Self {
        let mut adj = vec![0; n * n];
        for ((u, v), &w) in edge_pairs(n).zip(weights) {
            adj[u * n + v] = w;
            adj[v * n + u] = w;
        }
        Self { d, n, adj }
    }

    fn put(&mut self, u: usize, v: usize, w: u32) {
        self.adj[u * self.n + v] = w;
        self.adj[v * self.n + u] = w;
    }

    /// Returns a copy with the `(u, v)` weight replaced by `w mod d`.
    pub fn with_weight(mut self, u: usize, v: usize, w: u32) -> Result<Self> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::InvalidEdge {
                index: 0,
                reason: "self-loop".into(),
            });
        }
        self.put(u, v, w % self.d);
        Ok(self)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, u: usize, v: usize) -> u32 {
        self.adj[u * self.n + v]
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }

    /// Edge weights in the order (0,1), (0,2), ..., (n-2,n-1).
    pub fn edge_weights(&self) -> Vec<u32> {
        edge_pairs(self.n).map(|(u, v)| self.weight(u, v)).collect()
    }

    /// Nonzero edges as `(u, v, w)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize, u32)> {
        edge_pairs(self.n)
            .map(|(u, v)| (u, v, self.weight(u, v)))
            .filter(|&(_, _, w)| w != 0)
            .collect()
    }

    /// Un-reduced sum of the weights incident to `v`.
    pub fn degree(&self, v: usize) -> Result<u64> {
        self.check_vertex(v)?;
        Ok(self.degree_unchecked(v))
    }

    fn degree_unchecked(&self, v: usize) -> u64 {
        (0..self.n).map(|u| self.weight(u, v) as u64).sum()
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.n).map(|v| self.degree_unchecked(v)).collect()
    }

    /// Un-reduced sum of all edge weights.
    pub fn total_weight(&self) -> u64 {
        edge_pairs(self.n)
            .map(|(u, v)| self.weight(u, v) as u64)
            .sum()
    }

    /// Connectivity through nonzero-weight edges.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for (v, flag) in seen.iter_mut().enumerate() {
                if !*flag && self.weight(u, v) != 0 {
                    *flag = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == self.n
    }

    /// Induced subgraph on `vertices`, in the order given.
    pub fn subgraph(&self, vertices: &[usize]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidSubset("empty vertex subset".into()));
        }
        for &v in vertices {
            self.check_vertex(v)?;
        }
        if vertices.iter().duplicates().next().is_some() {
            return Err(Error::InvalidSubset("repeated vertex".into()));
        }
        let m = vertices.len();
        let mut adj = vec![0; m * m];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                adj[i * m + j] = self.weight(u, v);
            }
        }
        Ok(Self {
            d: self.d,
            n: m,
            adj,
        })
    }

    /// Every vertex subset with size in `min_size..=max_size` whose induced
    /// subgraph is a GHZ graph; by size, then lexicographically.
    pub fn find_ghz_subgraphs(&self, min_size: usize, max_size: usize) -> Result<Vec<Vec<usize>>> {
        if min_size < 3 || min_size > max_size || max_size > self.n {
            return Err(Error::InvalidBounds(format!(
                "need 3 <= min_size <= max_size <= n, got {min_size}..={max_size} with n = {}",
                self.n
            )));
        }
        let mut found = Vec::new();
        for size in min_size..=max_size {
            for subset in (0..self.n).combinations(size) {
                let sub = self.subgraph(&subset)?;
                if classify_ghz(&sub).is_ghz {
                    found.push(subset);
                }
            }
        }
        Ok(found)
    }
}

/// Unordered vertex pairs `(u, v)`, `u < v`, in the canonical edge order.
pub fn edge_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}
