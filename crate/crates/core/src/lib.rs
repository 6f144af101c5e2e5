//! GHZ paradoxes, Bell and KS inequalities from qudit graph states.
//!
//! Graphs carry `Z_d` edge weights. The algebra of generalized Pauli words
//! is symbolic; dense matrices appear only as an independent check and are
//! gated by a dimension cap.
//!
//! Numerical code is generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64` or `f32`.

pub mod bounds;
pub mod dense;
pub mod error;
pub mod graph;
mod lattice;
pub mod paradox;
pub mod pauli;
pub mod scalar;
pub mod state;
pub mod zd;

pub use bounds::{
    bell_classical_bound, bell_classical_max, bell_classical_value, bell_delta_value, bell_quantum,
    bell_trig_value, ks_classical_max, ks_lhs_value, ks_quantum, lemma_brute_max, lemma_c_closed,
    lemma_f, lemma_fm_max, lemma_fm_sweep, BoundKind, BoundReport, ClassicalAssignment,
    NoncontextualAssignment, OracleAgreement, Witness,
};
pub use dense::{CMatrix, CVector, DEFAULT_DENSE_CAP};
pub use error::{Error, Result};
pub use graph::{
    canonical_form, classify_ghz, enumerate_ghz_graphs, make_family, FailureReason, Family,
    GhzReport, GraphFile, WeightedGraph,
};
pub use paradox::{
    check_infeasible_algebraic, check_infeasible_exhaustive, constraint_system, genuineness,
    mermin_table, subgraph_paradox, InfeasibilityCertificate, Method, ParadoxSystem,
    DEFAULT_SEARCH_CAP,
};
pub use pauli::{stabilizer_product, vertex_stabilizer, PauliWord};
pub use scalar::Real;
pub use state::{build_state, verify_stabilizers, PhaseState, StabilizerReport, DEFAULT_STATE_CAP};

pub type BoundReport64 = bounds::BoundReport<f64>;
pub type BoundReport32 = bounds::BoundReport<f32>;
pub type BellQuantum64 = bounds::BellQuantum<f64>;
pub type BellQuantum32 = bounds::BellQuantum<f32>;
pub type KsQuantum64 = bounds::KsQuantum<f64>;
pub type KsQuantum32 = bounds::KsQuantum<f32>;
pub type FmSweep64 = bounds::FmSweep<f64>;
pub type FmSweep32 = bounds::FmSweep<f32>;
pub type CMatrix64 = dense::CMatrix<f64>;
pub type CMatrix32 = dense::CMatrix<f32>;
