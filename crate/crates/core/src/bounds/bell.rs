//! Two-setting, d-outcome Bell inequality of a GHZ graph.
//!
//! With `N_v = A_v Π_u B_u^{Γ_uv}` and `A_V = Π_v A_v`, the Bell operator
//! `(2/d) Σ_{k odd} (Σ_v N_v^k − A_V^k)` collapses on classical values to
//! `δ(A_V = −1) − δ(A_V = 1) + Σ_v (δ(N_v = 1) − δ(N_v = −1))`, because
//! `Σ_{k odd} ω^{kl} = (d/2)(δ_{l,0} − δ_{l,d/2})`.

use nalgebra::RealField;
use num_complex::Complex;
use serde::Serialize;

use super::{BoundKind, BoundReport, OracleAgreement, Witness};
use crate::dense::{self, CMatrix};
use crate::error::{Error, Result};
use crate::graph::{classify_ghz, WeightedGraph};
use crate::lattice::{par_scan, Best};
use crate::pauli::{vertex_stabilizer, PauliWord};
use crate::scalar::{cos_omega, Real};
use crate::state::build_state;
use crate::zd;

/// Classical values of `A_v` and `B_v`, as ω-exponents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalAssignment {
    pub d: u32,
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

impl ClassicalAssignment {
    pub fn new(d: u32, a: Vec<u32>, b: Vec<u32>) -> Result<Self> {
        zd::check_modulus(d)?;
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "a has {} values, b has {}",
                a.len(),
                b.len()
            )));
        }
        if let Some(&bad) = a.iter().chain(&b).find(|&&x| x >= d) {
            return Err(Error::InvalidBounds(format!("value {bad} outside Z_{d}")));
        }
        Ok(Self { d, a, b })
    }

    pub fn zeros(d: u32, n: usize) -> Self {
        Self {
            d,
            a: vec![0; n],
            b: vec![0; n],
        }
    }

    fn from_point(d: u32, point: &[u32]) -> Self {
        let n = point.len() / 2;
        Self {
            d,
            a: point[..n].to_vec(),
            b: point[n..].to_vec(),
        }
    }
}

fn check_assignment(g: &WeightedGraph, asg: &ClassicalAssignment) -> Result<()> {
    zd::require_even(g.d())?;
    if asg.d != g.d() || asg.a.len() != g.n() {
        return Err(Error::DimensionMismatch(format!(
            "assignment over (d = {}, n = {}) for graph over (d = {}, n = {})",
            asg.d,
            asg.a.len(),
            g.d(),
            g.n()
        )));
    }
    Ok(())
}

/// Exponents of `N_v` and of `A_V`.
fn correlator_exponents(g: &WeightedGraph, a: &[u32], b: &[u32]) -> (Vec<u32>, u32) {
    let d = g.d() as u64;
    let n = g.n();
    let nv = (0..n)
        .map(|v| {
            let s: u64 = a[v] as u64
                + (0..n)
                    .map(|u| g.weight(u, v) as u64 * b[u] as u64)
                    .sum::<u64>();
            (s % d) as u32
        })
        .collect();
    let av = (a.iter().map(|&x| x as u64).sum::<u64>() % d) as u32;
    (nv, av)
}

fn delta_form(d: u32, nv: &[u32], av: u32) -> i64 {
    let h = d / 2;
    let sign = |e: u32| -> i64 {
        if e == 0 {
            1
        } else if e == h {
            -1
        } else {
            0
        }
    };
    nv.iter().map(|&e| sign(e)).sum::<i64>() - sign(av)
}

/// Delta-form value of the Bell expression on a classical assignment.
pub fn bell_delta_value(g: &WeightedGraph, asg: &ClassicalAssignment) -> Result<i64> {
    check_assignment(g, asg)?;
    let (nv, av) = correlator_exponents(g, &asg.a, &asg.b);
    Ok(delta_form(g.d(), &nv, av))
}

/// Trigonometric form `(2/d) Σ_{k odd} [Σ_v cos(kθ n_v) − cos(kθ a_V)]`.
pub fn bell_trig_value<F: Real>(g: &WeightedGraph, asg: &ClassicalAssignment) -> Result<F> {
    check_assignment(g, asg)?;
    let d = g.d();
    let (nv, av) = correlator_exponents(g, &asg.a, &asg.b);
    let mut total = F::zero();
    for k in (1..d).step_by(2) {
        for &e in &nv {
            total += cos_omega::<F>(zd::mul(k, e, d), d);
        }
        total -= cos_omega::<F>(zd::mul(k, av, d), d);
    }
    Ok(total * F::from_usize_lossy(2) / F::from_usize_lossy(d as usize))
}

/// Bell value of a classical assignment; both forms are evaluated and must agree.
pub fn bell_classical_value<F: Real>(g: &WeightedGraph, asg: &ClassicalAssignment) -> Result<F> {
    let delta = bell_delta_value(g, asg)?;
    let trig: F = bell_trig_value(g, asg)?;
    let delta_f = F::from_f64_lossy(delta as f64);
    if (trig - delta_f).abs() > F::cross_check_tol() {
        return Err(Error::CrossCheck(format!(
            "Bell value: delta form {delta} vs trigonometric form {trig}"
        )));
    }
    Ok(delta_f)
}

fn require_ghz(g: &WeightedGraph) -> Result<()> {
    let report = classify_ghz(g);
    if !report.is_ghz {
        let reasons: Vec<_> = report.failure_reasons.iter().map(|r| r.code()).collect();
        return Err(Error::NotGhz(reasons.join(", ")));
    }
    Ok(())
}

/// The local-realistic bound `n − 1`, witnessed by the all-zero assignment
/// (every `N_v = 1` forces `A_V = 1`). No search.
pub fn bell_classical_bound<F: Real>(g: &WeightedGraph) -> Result<BoundReport<F>> {
    require_ghz(g)?;
    let zeros = ClassicalAssignment::zeros(g.d(), g.n());
    let at_zero: F = bell_classical_value(g, &zeros)?;
    let bound = F::from_usize_lossy(g.n() - 1);
    if (at_zero - bound).abs() > F::cross_check_tol() {
        return Err(Error::CrossCheck(format!(
            "all-zero assignment gives {at_zero}, expected {bound}"
        )));
    }
    Ok(BoundReport {
        kind: BoundKind::Bell,
        n: g.n(),
        d: g.d(),
        classical_bound: bound,
        classical_witness: Some(Witness::Assignment(zeros)),
        quantum_value: None,
        oracle_value: None,
        oracle_agreement: OracleAgreement::Skipped,
        notes: vec![],
    })
}

/// Maximizes the delta form over all `d^{2n}` assignments and compares
/// with `n − 1`.
pub fn bell_classical_max<F: Real>(g: &WeightedGraph, cap: u64) -> Result<BoundReport<F>> {
    let mut report = bell_classical_bound::<F>(g)?;
    let d = g.d();
    let n = g.n();
    let total = zd::check_space("Bell assignment", d, 2 * n, cap)?;
    let best = par_scan(
        d,
        2 * n,
        total,
        || None,
        |acc, idx, point| {
            let (nv, av) = correlator_exponents(g, &point[..n], &point[n..]);
            Best::offer(acc, delta_form(d, &nv, av), idx, point);
        },
        Best::merge,
    )
    .expect("non-empty search");
    let oracle = F::from_f64_lossy(best.value as f64);
    report.oracle_value = Some(oracle);
    report.oracle_agreement =
        OracleAgreement::from_values(report.classical_bound, Some(oracle), F::cross_check_tol());
    report.classical_witness = Some(Witness::Assignment(ClassicalAssignment::from_point(
        d,
        &best.point,
    )));
    report.notes.push(format!("scanned {total} assignments"));
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseBellCheck<F> {
    pub dimension: usize,
    /// `max |B − B†|` entrywise.
    pub hermiticity_deviation: F,
    pub expectation: F,
    pub expectation_imag: F,
    pub max_eigenvalue: F,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BellQuantum<F> {
    pub n: usize,
    pub d: u32,
    /// `⟨Γ|B_G|Γ⟩` with `A = X`, `B = Z`, evaluated term by term on the exact state.
    pub value: F,
    pub expected: F,
    pub dense: Option<DenseBellCheck<F>>,
    pub notes: Vec<String>,
}

/// Bell operator with `A_v = X_v`, `B_v = Z_v`, built from single-qudit
/// matrices.
fn dense_bell_operator<F: Real>(g: &WeightedGraph, dim: usize) -> CMatrix<F> {
    let d = g.d();
    let n = g.n();
    let mut op = CMatrix::<F>::zeros(dim, dim);
    for k in (1..d).step_by(2) {
        for v in 0..n {
            let factors: Vec<_> = (0..n)
                .map(|u| {
                    let x = if u == v { k } else { 0 };
                    dense::local_factor::<F>(d, x, zd::mul(k, g.weight(u, v), d))
                })
                .collect();
            op += dense::kron_all(&factors);
        }
        let xk: Vec<_> = (0..n).map(|_| dense::local_factor::<F>(d, k, 0)).collect();
        op -= dense::kron_all(&xk);
    }
    op * Complex::new(
        F::from_usize_lossy(2) / F::from_usize_lossy(d as usize),
        F::zero(),
    )
}

/// Quantum value of the Bell operator on `|Γ⟩`. The symbolic route reads
/// each term's eigen-exponent off the exact state; when `d^n` fits under
/// `dense_cap` the operator is also built densely and its spectrum checked
/// against `n + 1` (an instance check, not a proof).
pub fn bell_quantum<F>(g: &WeightedGraph, state_cap: u64, dense_cap: u64) -> Result<BellQuantum<F>>
where
    F: Real + RealField,
{
    require_ghz(g)?;
    let d = g.d();
    let n = g.n();
    let psi = build_state(g, state_cap)?;
    let x_all = PauliWord::x_all(d, n);
    let mut value = F::zero();
    for k in (1..d).step_by(2) {
        for v in 0..n {
            let term = vertex_stabilizer(g, v)?.power(k as u64);
            let e = psi.eigenvalue_of(&term)?.ok_or_else(|| {
                Error::CrossCheck(format!("g_{v}^{k} does not fix the graph state"))
            })?;
            value += cos_omega::<F>(e, d);
        }
        let e = psi
            .eigenvalue_of(&x_all.power(k as u64))?
            .ok_or_else(|| Error::CrossCheck(format!("X_V^{k} does not fix the graph state")))?;
        value -= cos_omega::<F>(e, d);
    }
    value = value * F::from_usize_lossy(2) / F::from_usize_lossy(d as usize);
    let expected = F::from_usize_lossy(n + 1);
    let tol = F::cross_check_tol();
    if num_traits::Float::abs(value - expected) > tol {
        return Err(Error::CrossCheck(format!(
            "⟨Γ|B|Γ⟩ = {value}, expected {expected}"
        )));
    }

    let mut notes = Vec::new();
    let dense = match dense::dimension(d, n, dense_cap) {
        Ok(dim) => {
            let op = dense_bell_operator::<F>(g, dim);
            let herm = dense::max_abs_diff(&op, &dense::dagger(&op));
            let vec = psi.to_dense::<F>(dense_cap)?;
            let ex = dense::expectation(&vec, &op);
            let spectrum = dense::hermitian_eigenvalues(&op);
            let max_eigenvalue = *spectrum.last().expect("non-empty spectrum");
            let pass = herm <= F::identity_tol()
                && num_traits::Float::abs(ex.re - expected) <= tol
                && num_traits::Float::abs(ex.im) <= tol
                && max_eigenvalue <= expected + tol;
            notes.push("spectral bound n+1 verified for this instance only".into());
            Some(DenseBellCheck {
                dimension: dim,
                hermiticity_deviation: herm,
                expectation: ex.re,
                expectation_imag: ex.im,
                max_eigenvalue,
                pass,
            })
        }
        Err(Error::CapExceeded { required, .. }) => {
            notes.push(format!(
                "dense check skipped: dimension {required} above cap"
            ));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(BellQuantum {
        n,
        d,
        value,
        expected,
        dense,
        notes,
    })
}
