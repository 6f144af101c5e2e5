use super::{classify_ghz, edge_pairs, WeightedGraph};
use crate::error::{Error, Result};
use crate::zd;

/// Named GHZ-graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Three vertices, every edge `d/2`.
    Triangle { d: u32 },
    /// Four vertices with `a + b + c = d/2` and `x' = d/2 + x`:
    /// w01 = a', w02 = b, w03 = c, w12 = c', w13 = b', w23 = a.
    K4 { d: u32, a: u32, b: u32, c: u32 },
    /// Odd cycle over Z_2.
    OddLoop { n: usize },
    /// Complete graph on `4j + 3` vertices over Z_2.
    Complete4j3 { j: usize },
}

pub fn make_family(family: &Family) -> Result<WeightedGraph> {
    let g = match *family {
        Family::Triangle { d } => {
            zd::require_even(d)?;
            let h = d / 2;
            WeightedGraph::from_edges(d, 3, &[(0, 1, h), (0, 2, h), (1, 2, h)])?
        }
        Family::K4 { d, a, b, c } => {
            zd::require_even(d)?;
            let h = d / 2;
            if a + b + c != h {
                return Err(Error::InvalidFamily(format!(
                    "k4 needs a + b + c = d/2 = {h}, got {}",
                    a + b + c
                )));
            }
            let p = |x: u32| (h + x) % d;
            WeightedGraph::from_edges(
                d,
                4,
                &[
                    (0, 1, p(a)),
                    (0, 2, b),
                    (0, 3, c),
                    (1, 2, p(c)),
                    (1, 3, p(b)),
                    (2, 3, a),
                ],
            )?
        }
        Family::OddLoop { n } => {
            if n < 3 || n % 2 == 0 {
                return Err(Error::InvalidFamily(format!(
                    "odd_loop needs an odd length >= 3, got {n}"
                )));
            }
            let edges: Vec<_> = (0..n)
                .map(|v| (v.min((v + 1) % n), v.max((v + 1) % n), 1))
                .collect();
            WeightedGraph::from_edges(2, n, &edges)?
        }
        Family::Complete4j3 { j } => {
            let n = 4 * j + 3;
            let edges: Vec<_> = edge_pairs(n).map(|(u, v)| (u, v, 1)).collect();
            WeightedGraph::from_edges(2, n, &edges)?
        }
    };
    let report = classify_ghz(&g);
    if !report.is_ghz {
        let reasons: Vec<_> = report.failure_reasons.iter().map(|r| r.code()).collect();
        return Err(Error::InvalidFamily(format!(
            "{family:?} does not yield a GHZ graph: {}",
            reasons.join(", ")
        )));
    }
    Ok(g)
}
