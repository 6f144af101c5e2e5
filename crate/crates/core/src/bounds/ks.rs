//! State-independent KS inequality of a GHZ graph.
//!
//! A noncontextual model fixes one value per observable: `ω^{x_v}` for
//! `X_v`, `ω^{z_v}` for `Z_v`, `ω^{γ_v}` for `g_v` and `ω^β` for `X_V`.
//! The left side is then
//!
//! ```text
//! cos θ(Σx − β) + Σ_v cos θ(x_v + Σ_u Γ_uv z_u − γ_v) − cos θ(Σγ − β)
//! ```
//!
//! and the substitution `y_0 = Σx − β`, `y_v = γ_v − x_v − Σ_u Γ_uv z_u`
//! turns it into the lattice function `f` on `n + 1` coordinates, because
//! `Σ_u D_u z_u ≡ 0`. So the bound is `C_{n+1,d}`.

use serde::Serialize;

use super::lemma::lemma_fm_sweep;
use super::{lemma_c_closed, BoundKind, BoundReport, OracleAgreement, Witness};
use crate::dense::{self, CMatrix};
use crate::error::{Error, Result};
use crate::graph::{classify_ghz, WeightedGraph};
use crate::lattice::{par_scan, Best};
use crate::pauli::{vertex_stabilizer, PauliWord};
use crate::scalar::{cos_omega, cos_table, Real};
use crate::zd;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NoncontextualAssignment {
    pub d: u32,
    pub x: Vec<u32>,
    pub z: Vec<u32>,
    /// Values of the vertex stabilizers `g_v`.
    pub gamma: Vec<u32>,
    /// Value of `X_V`.
    pub beta: u32,
}

impl NoncontextualAssignment {
    fn from_point(d: u32, n: usize, point: &[u32]) -> Self {
        Self {
            d,
            x: point[..n].to_vec(),
            z: point[n..2 * n].to_vec(),
            gamma: point[2 * n..3 * n].to_vec(),
            beta: point[3 * n],
        }
    }
}

fn require_ghz(g: &WeightedGraph) -> Result<()> {
    let report = classify_ghz(g);
    if !report.is_ghz {
        let reasons: Vec<_> = report.failure_reasons.iter().map(|r| r.code()).collect();
        return Err(Error::NotGhz(reasons.join(", ")));
    }
    Ok(())
}

/// `x_v + Σ_u Γ_uv z_u mod d` for every `v`.
fn local_exponents(g: &WeightedGraph, x: &[u32], z: &[u32]) -> Vec<u32> {
    let d = g.d() as u64;
    (0..g.n())
        .map(|v| {
            let s = x[v] as u64
                + (0..g.n())
                    .map(|u| g.weight(u, v) as u64 * z[u] as u64)
                    .sum::<u64>();
            (s % d) as u32
        })
        .collect()
}

/// Left side of the KS inequality for one noncontextual assignment.
pub fn ks_lhs_value<F: Real>(g: &WeightedGraph, asg: &NoncontextualAssignment) -> Result<F> {
    let n = g.n();
    if asg.d != g.d() || [asg.x.len(), asg.z.len(), asg.gamma.len()] != [n; 3] {
        return Err(Error::DimensionMismatch(
            "assignment does not fit the graph".into(),
        ));
    }
    let d = g.d();
    let local = local_exponents(g, &asg.x, &asg.z);
    let sx = asg.x.iter().fold(0, |a, &b| zd::add(a, b, d));
    let sg = asg.gamma.iter().fold(0, |a, &b| zd::add(a, b, d));
    let mut value = cos_omega::<F>(zd::add(sx, zd::neg(asg.beta, d), d), d);
    for (&l, &gv) in local.iter().zip(&asg.gamma) {
        value += cos_omega::<F>(zd::add(l, zd::neg(gv, d), d), d);
    }
    Ok(value - cos_omega::<F>(zd::add(sg, zd::neg(asg.beta, d), d), d))
}

/// Classical bound `C_{n+1,d}` through the reduction to `f`, with an
/// explicit maximizing assignment, and a direct search over all `d^{3n+1}`
/// noncontextual assignments when that fits under `cap`.
pub fn ks_classical_max<F: Real>(g: &WeightedGraph, cap: u64) -> Result<BoundReport<F>> {
    require_ghz(g)?;
    let d = g.d();
    let n = g.n();
    let bound: F = lemma_c_closed(n + 1, d)?;
    let tol = F::cross_check_tol();

    // the F_δ lattice point y on n+1 coordinates; take x = z = 0,
    // β = −y_0 and γ_v = y_v
    let sweep = lemma_fm_sweep::<F>(n + 1, d)?;
    let y = sweep.point(sweep.delta);
    let witness = NoncontextualAssignment {
        d,
        x: vec![0; n],
        z: vec![0; n],
        gamma: y[1..].iter().map(|&k| k % d).collect(),
        beta: zd::neg(y[0] % d, d),
    };
    let at_witness: F = ks_lhs_value(g, &witness)?;
    if (at_witness - bound).abs() > tol {
        return Err(Error::CrossCheck(format!(
            "KS witness evaluates to {at_witness}, closed form gives {bound}"
        )));
    }

    let mut notes = vec![format!(
        "bound C({}, {d}) via reduction to the lattice maximum",
        n + 1
    )];
    let vars = 3 * n + 1;
    let oracle = match zd::check_space("KS assignment", d, vars, cap) {
        Ok(_) => {
            let best = ks_direct_search::<F>(g);
            notes.push(format!(
                "direct search over {} noncontextual assignments",
                zd::space_size(d, vars)
            ));
            Some(best)
        }
        Err(Error::CapExceeded { required, .. }) => {
            notes.push(format!(
                "direct search skipped: {required} assignments above cap"
            ));
            None
        }
        Err(e) => return Err(e),
    };
    let (oracle_value, classical_witness) = match oracle {
        Some(best) => (
            Some(best.value),
            NoncontextualAssignment::from_point(d, n, &best.point),
        ),
        None => (None, witness),
    };
    Ok(BoundReport {
        kind: BoundKind::Ks,
        n,
        d,
        classical_bound: bound,
        classical_witness: Some(Witness::Noncontextual(classical_witness)),
        quantum_value: None,
        oracle_value,
        oracle_agreement: OracleAgreement::from_values(bound, oracle_value, tol),
        notes,
    })
}

/// Scans `(x, z)` in parallel and `(γ, β)` inside, in one counter order
/// over `(x, z, γ, β)`.
fn ks_direct_search<F: Real>(g: &WeightedGraph) -> Best<F> {
    let d = g.d();
    let n = g.n();
    let cos = cos_table::<F>(d);
    let inner_total = zd::space_size(d, n) as u64;
    let outer_total = zd::space_size(d, 2 * n) as u64;
    par_scan(
        d,
        2 * n,
        outer_total,
        || None,
        |acc: &mut Option<Best<F>>, outer, xz| {
            let local = local_exponents(g, &xz[..n], &xz[n..]);
            let sx = xz[..n].iter().fold(0, |a, &b| zd::add(a, b, d));
            let mut gamma = vec![0u32; n];
            let mut point = Vec::with_capacity(3 * n + 1);
            for gi in 0..inner_total {
                zd::decode(gi, d, &mut gamma);
                let mut partial = F::zero();
                let mut sg = 0u32;
                for v in 0..n {
                    partial += cos[zd::add(local[v], zd::neg(gamma[v], d), d) as usize];
                    sg = zd::add(sg, gamma[v], d);
                }
                for beta in 0..d {
                    let nb = zd::neg(beta, d);
                    let value = partial + cos[zd::add(sx, nb, d) as usize]
                        - cos[zd::add(sg, nb, d) as usize];
                    let index = (outer * inner_total + gi) * d as u64 + beta as u64;
                    let improves = match acc {
                        None => true,
                        Some(b) => value > b.value,
                    };
                    if improves {
                        point.clear();
                        point.extend_from_slice(xz);
                        point.extend_from_slice(&gamma);
                        point.push(beta);
                        Best::offer(acc, value, index, &point);
                    }
                }
            }
        },
        Best::merge,
    )
    .expect("non-empty search")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KsTerm<F> {
    pub label: String,
    /// The operator product reduces to `ω^phase_exp · I`.
    pub phase_exp: u32,
    /// Signed contribution to the left side.
    pub contribution: F,
    /// Entrywise deviation of the dense product from `ω^phase_exp · I`.
    pub dense_deviation: Option<F>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KsQuantum<F> {
    pub n: usize,
    pub d: u32,
    pub value: F,
    pub expected: F,
    pub terms: Vec<KsTerm<F>>,
    pub dense_checked: bool,
}

fn word_matrix<F: Real>(w: &PauliWord) -> CMatrix<F> {
    // built per qudit so the dense route does not reuse symbolic products
    let factors: Vec<_> = (0..w.n())
        .map(|v| dense::local_factor::<F>(w.d(), w.x_exp()[v], w.z_exp()[v]))
        .collect();
    dense::kron_all(&factors) * dense::omega::<F>(w.phase(), w.d())
}

/// Reduces each of the `n + 2` operator products of the inequality to a
/// multiple of the identity; the left side is `n + 2` for every state.
pub fn ks_quantum<F: Real>(g: &WeightedGraph, dense_cap: u64) -> Result<KsQuantum<F>> {
    require_ghz(g)?;
    let d = g.d();
    let n = g.n();
    let dense_ok = dense::dimension(d, n, dense_cap).is_ok();
    let tol = F::identity_tol();

    let x_all_dag = PauliWord::x_all(d, n).adjoint();
    let xs: Vec<_> = (0..n).map(|v| PauliWord::x_on(d, n, v)).collect();
    let stabs = (0..n)
        .map(|v| vertex_stabilizer(g, v))
        .collect::<Result<Vec<_>>>()?;

    // each entry: label, sign, factor words in order
    let mut products: Vec<(String, F, Vec<PauliWord>)> = Vec::new();
    let mut first = vec![x_all_dag.clone()];
    first.extend(xs.iter().cloned());
    products.push(("X_V† Π X_v".into(), F::one(), first));
    for v in 0..n {
        let mut factors = vec![stabs[v].adjoint(), xs[v].clone()];
        for u in 0..n {
            factors.push(PauliWord::z_on(d, n, u).power(g.weight(u, v) as u64));
        }
        products.push((format!("g_{v}† X_{v} Π Z^Γ"), F::one(), factors));
    }
    let mut last = vec![x_all_dag];
    last.extend(stabs.iter().cloned());
    products.push(("X_V† Π g_v".into(), -F::one(), last));

    let mut terms = Vec::with_capacity(products.len());
    let mut value = F::zero();
    for (label, sign, factors) in products {
        let word = factors
            .iter()
            .try_fold(PauliWord::identity(d, n), |acc, f| acc.multiply(f))?;
        if !word.is_phase_only() {
            return Err(Error::CrossCheck(format!(
                "{label} reduces to {word}, not a scalar"
            )));
        }
        let contribution = sign * cos_omega::<F>(word.phase(), d);
        let dense_deviation = if dense_ok {
            let m = factors
                .iter()
                .skip(1)
                .fold(word_matrix::<F>(&factors[0]), |acc, f| {
                    dense::matmul(&acc, &word_matrix(f))
                });
            let target = dense::identity::<F>(m.nrows()) * dense::omega::<F>(word.phase(), d);
            let dev = dense::max_abs_diff(&m, &target);
            if dev > tol {
                return Err(Error::CrossCheck(format!(
                    "{label}: dense product deviates from ω^{} I by {dev}",
                    word.phase()
                )));
            }
            Some(dev)
        } else {
            None
        };
        value += contribution;
        terms.push(KsTerm {
            label,
            phase_exp: word.phase(),
            contribution,
            dense_deviation,
        });
    }
    let expected = F::from_usize_lossy(n + 2);
    if (value - expected).abs() > F::cross_check_tol() {
        return Err(Error::CrossCheck(format!(
            "KS quantum value {value}, expected {expected}"
        )));
    }
    Ok(KsQuantum {
        n,
        d,
        value,
        expected,
        terms,
        dense_checked: dense_ok,
    })
}
