use serde::Serialize;

use super::WeightedGraph;
use crate::zd::gcd;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailureReason {
    #[serde(rename = "odd modulus")]
    OddModulus,
    #[serde(rename = "not connected")]
    NotConnected,
    #[serde(rename = "degree not divisible")]
    DegreeNotDivisible,
    #[serde(rename = "total weight divisible")]
    TotalWeightDivisible,
}

impl FailureReason {
    pub fn code(self) -> &'static str {
        match self {
            Self::OddModulus => "odd modulus",
            Self::NotConnected => "not connected",
            Self::DegreeNotDivisible => "degree not divisible",
            Self::TotalWeightDivisible => "total weight divisible",
        }
    }
}

/// Two other vertices `b`, `c` whose weights to the vertex are coprime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimaryWitness {
    pub b: usize,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhzReport {
    pub d: u32,
    pub n: usize,
    pub connected: bool,
    pub degrees: Vec<u64>,
    pub total_weight: u64,
    pub degrees_divisible: bool,
    pub weight_nondivisible: bool,
    pub is_ghz: bool,
    /// Every vertex has a pair of weights with `gcd(w_ab, w_ac, d) = 1`.
    pub is_primary: bool,
    pub is_weakly_primary: bool,
    /// Same predicates with plain `gcd(w_ab, w_ac) = 1`.
    pub is_primary_pairwise: bool,
    pub is_weakly_primary_pairwise: bool,
    pub primary_witnesses: Vec<Option<PrimaryWitness>>,
    pub failure_reasons: Vec<FailureReason>,
}

fn witness_for<P>(g: &WeightedGraph, a: usize, coprime: P) -> Option<PrimaryWitness>
where
    P: Fn(u64, u64) -> bool,
{
    let n = g.n();
    for b in (0..n).filter(|&b| b != a) {
        for c in (b + 1..n).filter(|&c| c != a) {
            if coprime(g.weight(a, b) as u64, g.weight(a, c) as u64) {
                return Some(PrimaryWitness { b, c });
            }
        }
    }
    None
}

/// Decides the GHZ-graph conditions and the (weakly) primary predicates.
pub fn classify_ghz(g: &WeightedGraph) -> GhzReport {
    let d = g.d() as u64;
    let degrees = g.degrees();
    let total_weight = g.total_weight();
    let connected = g.is_connected();
    let degrees_divisible = degrees.iter().all(|&x| x % d == 0);
    let weight_nondivisible = !total_weight.is_multiple_of(d);
    let is_ghz = connected && degrees_divisible && weight_nondivisible;

    let primary_witnesses: Vec<_> = (0..g.n())
        .map(|a| witness_for(g, a, |x, y| gcd(gcd(x, y), d) == 1))
        .collect();
    let pairwise: Vec<_> = (0..g.n())
        .map(|a| witness_for(g, a, |x, y| gcd(x, y) == 1))
        .collect();

    let mut failure_reasons = Vec::new();
    if d % 2 == 1 {
        failure_reasons.push(FailureReason::OddModulus);
    }
    if !connected {
        failure_reasons.push(FailureReason::NotConnected);
    }
    if !degrees_divisible {
        failure_reasons.push(FailureReason::DegreeNotDivisible);
    }
    if !weight_nondivisible {
        failure_reasons.push(FailureReason::TotalWeightDivisible);
    }

    GhzReport {
        d: g.d(),
        n: g.n(),
        connected,
        degrees,
        total_weight,
        degrees_divisible,
        weight_nondivisible,
        is_ghz,
        is_primary: primary_witnesses.iter().all(Option::is_some),
        is_weakly_primary: primary_witnesses.iter().any(Option::is_some),
        is_primary_pairwise: pairwise.iter().all(Option::is_some),
        is_weakly_primary_pairwise: pairwise.iter().any(Option::is_some),
        primary_witnesses,
        failure_reasons,
    }
}
