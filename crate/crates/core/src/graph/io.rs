use serde::{Deserialize, Serialize};

use super::WeightedGraph;
use crate::error::{Error, Result};

/// On-disk graph: `{"d": int, "n": int, "edges": [[u, v, w], ...]}` with
/// `u < v`, each pair at most once and `0 < w < d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub d: u32,
    pub n: usize,
    pub edges: Vec<[u64; 3]>,
}

impl GraphFile {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        Self {
            d: g.d(),
            n: g.n(),
            edges: g
                .edges()
                .into_iter()
                .map(|(u, v, w)| [u as u64, v as u64, w as u64])
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph file serializes")
    }

    /// Validates bounds and builds the graph.
    pub fn to_graph(&self) -> Result<WeightedGraph> {
        let mut triples = Vec::with_capacity(self.edges.len());
        for (index, &[u, v, w]) in self.edges.iter().enumerate() {
            let bad = |reason: String| Error::InvalidEdge { index, reason };
            if u >= v {
                return Err(bad(format!("edges[{index}]: need u < v, got [{u}, {v}]")));
            }
            if v >= self.n as u64 {
                return Err(bad(format!(
                    "edges[{index}]: vertex {v} out of range for n = {}",
                    self.n
                )));
            }
            if w == 0 || w >= self.d as u64 {
                return Err(bad(format!(
                    "edges[{index}]: weight {w} outside 1..{}",
                    self.d
                )));
            }
            triples.push((u as usize, v as usize, w as u32));
        }
        WeightedGraph::from_edges(self.d, self.n, &triples)
    }
}

impl WeightedGraph {
    pub fn from_json(text: &str) -> Result<Self> {
        GraphFile::parse(text)?.to_graph()
    }

    pub fn to_json(&self) -> String {
        GraphFile::from_graph(self).to_json()
    }
}
