use itertools::Itertools;

use super::{classify_ghz, edge_pairs, WeightedGraph};
use crate::error::{Error, Result};
use crate::zd;

/// Largest vertex count for which the brute-force canonical form is allowed.
pub const MAX_DEDUP_VERTICES: usize = 8;

/// Lexicographically smallest edge-weight vector over all relabelings.
pub fn canonical_form(g: &WeightedGraph) -> Result<Vec<u32>> {
    let n = g.n();
    if n > MAX_DEDUP_VERTICES {
        return Err(Error::DedupTooLarge {
            n,
            max: MAX_DEDUP_VERTICES,
        });
    }
    let pairs: Vec<_> = edge_pairs(n).collect();
    let mut best: Option<Vec<u32>> = None;
    let mut code = vec![0u32; pairs.len()];
    for perm in (0..n).permutations(n) {
        for (slot, &(u, v)) in code.iter_mut().zip(&pairs) {
            *slot = g.weight(perm[u], perm[v]);
        }
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code.clone());
        }
    }
    Ok(best.expect("at least one permutation"))
}

/// Streams connected GHZ graphs on `n` labeled vertices.
///
/// Edge weights over (0,1), (0,2), ..., (n-2,n-1) run as a base-d counter
/// with the first edge most significant. With `dedup` only graphs that equal
/// their own canonical form are yielded; since the canonical form is the
/// counter-minimal member of its class, that is exactly one per class.
#[derive(Debug, Clone)]
pub struct GhzEnumerator {
    d: u32,
    n: usize,
    dedup: bool,
    weights: Vec<u32>,
    done: bool,
    scanned: u64,
}

impl GhzEnumerator {
    /// Number of labeled weight assignments visited so far.
    pub fn scanned(&self) -> u64 {
        self.scanned
    }
}

pub fn enumerate_ghz_graphs(n: usize, d: u32, dedup: bool, cap: u64) -> Result<GhzEnumerator> {
    zd::check_modulus(d)?;
    if n < 2 {
        return Err(Error::InvalidBounds(format!(
            "enumeration needs n >= 2, got {n}"
        )));
    }
    if dedup && n > MAX_DEDUP_VERTICES {
        return Err(Error::DedupTooLarge {
            n,
            max: MAX_DEDUP_VERTICES,
        });
    }
    let edges = n * (n - 1) / 2;
    zd::check_space("enumeration", d, edges, cap)?;
    Ok(GhzEnumerator {
        d,
        n,
        dedup,
        weights: vec![0; edges],
        done: false,
        scanned: 0,
    })
}

impl Iterator for GhzEnumerator {
    type Item = WeightedGraph;

    fn next(&mut self) -> Option<WeightedGraph> {
        while !self.done {
            let g = WeightedGraph::from_edge_weights(self.d, self.n, &self.weights);
            self.scanned += 1;
            self.done = !zd::increment(&mut self.weights, self.d);
            // odd d never passes, but the scan still runs so the claim is checked
            if !classify_ghz(&g).is_ghz {
                continue;
            }
            if self.dedup {
                let canon = canonical_form(&g).expect("n checked at construction");
                if canon != g.edge_weights() {
                    continue;
                }
            }
            return Some(g);
        }
        None
    }
}
