//! Classical and quantum bounds of the Bell and KS inequalities attached
//! to a GHZ graph, and the lattice maximization behind the KS bound.
//!
//! Every classical search works on ω-exponents; cosines are only taken
//! when an objective value is needed.

mod bell;
mod ks;
mod lemma;

pub use bell::{
    bell_classical_bound, bell_classical_max, bell_classical_value, bell_delta_value, bell_quantum,
    bell_trig_value, BellQuantum, ClassicalAssignment, DenseBellCheck,
};
pub use ks::{
    ks_classical_max, ks_lhs_value, ks_quantum, KsQuantum, KsTerm, NoncontextualAssignment,
};
pub use lemma::{
    lemma_brute_max, lemma_c_closed, lemma_f, lemma_fm_max, lemma_fm_sweep, FmSweep, LatticeSplit,
};

use serde::{Serialize, Serializer};

use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Bell,
    Ks,
    Lemma,
}

/// Maximizer of a classical search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Values of `A_v`, `B_v` as ω-exponents.
    Assignment(ClassicalAssignment),
    /// Lattice point as multiples of `θ = 2π/d`, each in `1..=d`.
    Lattice(Vec<u32>),
    Noncontextual(NoncontextualAssignment),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAgreement {
    Agree,
    Disagree,
    Skipped,
}

impl OracleAgreement {
    pub fn from_values<F: Real>(bound: F, oracle: Option<F>, tol: F) -> Self {
        match oracle {
            None => Self::Skipped,
            Some(v) if (v - bound).abs() <= tol => Self::Agree,
            Some(_) => Self::Disagree,
        }
    }
}

impl Serialize for OracleAgreement {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Agree => s.serialize_bool(true),
            Self::Disagree => s.serialize_bool(false),
            Self::Skipped => s.serialize_str("skipped"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport<F> {
    pub kind: BoundKind,
    pub n: usize,
    pub d: u32,
    pub classical_bound: F,
    pub classical_witness: Option<Witness>,
    pub quantum_value: Option<F>,
    /// Independent value of the classical bound (brute force).
    pub oracle_value: Option<F>,
    pub oracle_agreement: OracleAgreement,
    pub notes: Vec<String>,
}

impl<F: Real> BoundReport<F> {
    /// Re-evaluates `oracle_agreement` at another tolerance.
    pub fn recheck(&mut self, tol: F) {
        self.oracle_agreement =
            OracleAgreement::from_values(self.classical_bound, self.oracle_value, tol);
    }
}
