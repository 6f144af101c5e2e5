//! Realistic-value constraint systems of GHZ graphs and their
//! infeasibility certificates.
//!
//! A classical value of `X_v` or `Z_v` is some `ω^t`, recorded here by its
//! exponent `t`. Variables are `(a_0..a_{n-1}, b_0..b_{n-1})` with `a_v`
//! the exponent for `X_v` and `b_v` the one for `Z_v`. A product
//! observable `Π X_v^{x_v} Z_v^{z_v}` with certain eigenvalue `ω^k` then
//! gives the linear row `Σ x_v a_v + Σ z_v b_v ≡ k (mod d)`.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{classify_ghz, WeightedGraph};
use crate::lattice::{par_scan, Best};
use crate::pauli::{stabilizer_product, vertex_stabilizer, PauliWord, RenderStyle};
use crate::zd;

/// Default cap on exhaustive assignment searches.
pub const DEFAULT_SEARCH_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Stabilizer { vertex: usize },
    Product,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constraint {
    pub kind: RowKind,
    /// Coefficients of `a_0..a_{n-1}` followed by `b_0..b_{n-1}`.
    pub coeffs: Vec<u32>,
    pub rhs: u32,
}

impl Constraint {
    fn from_word(kind: RowKind, w: &PauliWord, eigen: u32) -> Self {
        debug_assert!(
            w.x_exp()
                .iter()
                .zip(w.z_exp())
                .all(|(&x, &z)| x == 0 || z == 0),
            "row observable must be local X or Z powers"
        );
        // w = ω^p · (local product), w|Γ⟩ = ω^eigen|Γ⟩
        let d = w.d();
        Self {
            kind,
            coeffs: w.x_exp().iter().chain(w.z_exp()).copied().collect(),
            rhs: zd::add(eigen, zd::neg(w.phase(), d), d),
        }
    }

    fn lhs(&self, assignment: &[u32], d: u32) -> u32 {
        let s: u64 = self
            .coeffs
            .iter()
            .zip(assignment)
            .map(|(&c, &x)| c as u64 * x as u64)
            .sum();
        (s % d as u64) as u32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParadoxSystem {
    pub d: u32,
    pub n: usize,
    /// Vertices whose stabilizers enter the system.
    pub vertices: Vec<usize>,
    pub rows: Vec<Constraint>,
}

impl ParadoxSystem {
    pub fn num_vars(&self) -> usize {
        2 * self.n
    }

    pub fn satisfied_rows(&self, assignment: &[u32]) -> usize {
        self.rows
            .iter()
            .filter(|r| r.lhs(assignment, self.d) == r.rhs)
            .count()
    }

    pub fn is_satisfied(&self, assignment: &[u32]) -> bool {
        self.satisfied_rows(assignment) == self.rows.len()
    }

    /// Copy with the product row's right side replaced.
    pub fn with_product_rhs(&self, rhs: u32) -> Self {
        let mut out = self.clone();
        for row in out.rows.iter_mut().filter(|r| r.kind == RowKind::Product) {
            row.rhs = rhs % self.d;
        }
        out
    }

    /// Copy without the product row.
    pub fn without_product_row(&self) -> Self {
        let mut out = self.clone();
        out.rows.retain(|r| r.kind != RowKind::Product);
        out
    }
}

impl fmt::Display for ParadoxSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let terms: Vec<String> = row
                .coeffs
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(|(i, &c)| {
                    let name = if i < self.n {
                        format!("a{i}")
                    } else {
                        format!("b{}", i - self.n)
                    };
                    if c == 1 {
                        name
                    } else {
                        format!("{c}·{name}")
                    }
                })
                .collect();
            let lhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            writeln!(f, "{lhs} ≡ {} (mod {})", row.rhs, self.d)?;
        }
        Ok(())
    }
}

/// The rows `a_v + Σ_u Γ_uv b_u ≡ 0` for every vertex and `Σ_v a_v ≡ d/2`.
pub fn constraint_system(g: &WeightedGraph) -> Result<ParadoxSystem> {
    let all: Vec<usize> = (0..g.n()).collect();
    subgraph_paradox(g, &all)
}

/// Paradox from a GHZ subgraph on `vertices`: the stabilizers `g_u` of
/// the full graph for `u` in the subset, plus their product.
pub fn subgraph_paradox(g: &WeightedGraph, vertices: &[usize]) -> Result<ParadoxSystem> {
    let sub = g.subgraph(vertices)?;
    let report = classify_ghz(&sub);
    if !report.is_ghz {
        let reasons: Vec<_> = report.failure_reasons.iter().map(|r| r.code()).collect();
        return Err(Error::NotGhz(reasons.join(", ")));
    }
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();

    let mut rows = Vec::with_capacity(sorted.len() + 1);
    for &v in &sorted {
        let gv = vertex_stabilizer(g, v)?;
        rows.push(Constraint::from_word(
            RowKind::Stabilizer { vertex: v },
            &gv,
            0,
        ));
    }
    // Π_{u∈S} g_u fixes |Γ⟩, and equals ω^{W_S} X_S Π_w Z_w^{c_w}
    let product = stabilizer_product(g, &sorted)?;
    rows.push(Constraint::from_word(RowKind::Product, &product, 0));

    Ok(ParadoxSystem {
        d: g.d(),
        n: g.n(),
        vertices: sorted,
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Algebraic,
    Exhaustive,
}

/// `0 ≡ rhs (mod modulus)` with `rhs ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Contradiction {
    pub lhs: u32,
    pub rhs: u32,
    pub modulus: u32,
}

impl fmt::Display for Contradiction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ≡ {} (mod {})", self.lhs, self.rhs, self.modulus)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfeasibilityCertificate {
    pub method: Method,
    pub infeasible: bool,
    pub rows: usize,
    /// Number of assignments tested (exhaustive only).
    pub searched: Option<u64>,
    pub max_satisfied_rows: usize,
    /// First assignment, in counter order, reaching `max_satisfied_rows`;
    /// a solution when the system is feasible.
    pub best_assignment: Option<Vec<u32>>,
    /// Row multipliers whose Z_d-combination cancels every variable.
    pub combination: Option<Vec<u32>>,
    pub contradiction: Option<Contradiction>,
}

/// Sums the stabilizer rows and subtracts the product row: every variable
/// cancels because each degree is divisible by `d`, leaving `0 ≡ d/2`.
pub fn check_infeasible_algebraic(sys: &ParadoxSystem) -> Result<InfeasibilityCertificate> {
    let d = sys.d;
    let combination: Vec<u32> = sys
        .rows
        .iter()
        .map(|r| match r.kind {
            RowKind::Stabilizer { .. } => 1,
            RowKind::Product => d - 1,
        })
        .collect();
    let mut coeffs = vec![0u32; sys.num_vars()];
    let mut rhs = 0u32;
    for (row, &k) in sys.rows.iter().zip(&combination) {
        for (acc, &c) in coeffs.iter_mut().zip(&row.coeffs) {
            *acc = zd::add(*acc, zd::mul(k, c, d), d);
        }
        rhs = zd::add(rhs, zd::mul(k, row.rhs, d), d);
    }
    if let Some(i) = coeffs.iter().position(|&c| c != 0) {
        return Err(Error::NoContradiction(format!(
            "variable {i} keeps coefficient {} after combination",
            coeffs[i]
        )));
    }
    if rhs == 0 {
        return Err(Error::NoContradiction("combined right side is 0".into()));
    }

    // Any proper subset of rows is satisfiable: zeros without the product
    // row, and b = 0, a_v = rhs_product without the row of v.
    let product_rhs = sys
        .rows
        .iter()
        .find(|r| r.kind == RowKind::Product)
        .map_or(0, |r| r.rhs);
    let mut witnesses = vec![vec![0u32; sys.num_vars()]];
    for row in &sys.rows {
        if let RowKind::Stabilizer { vertex } = row.kind {
            let mut asg = vec![0u32; sys.num_vars()];
            asg[vertex] = product_rhs;
            witnesses.push(asg);
        }
    }
    let mut best = witnesses[0].clone();
    for w in &witnesses[1..] {
        if sys.satisfied_rows(w) > sys.satisfied_rows(&best) {
            best = w.clone();
        }
    }
    let max_satisfied_rows = sys.satisfied_rows(&best);

    Ok(InfeasibilityCertificate {
        method: Method::Algebraic,
        infeasible: true,
        rows: sys.rows.len(),
        searched: None,
        max_satisfied_rows,
        best_assignment: Some(best),
        combination: Some(combination),
        contradiction: Some(Contradiction {
            lhs: 0,
            rhs,
            modulus: d,
        }),
    })
}

/// Tests every assignment in Z_d^{2n}.
pub fn check_infeasible_exhaustive(
    sys: &ParadoxSystem,
    cap: u64,
) -> Result<InfeasibilityCertificate> {
    let vars = sys.num_vars();
    let total = zd::check_space("exhaustive paradox", sys.d, vars, cap)?;
    let best = par_scan(
        sys.d,
        vars,
        total,
        || None,
        |acc, idx, asg| Best::offer(acc, sys.satisfied_rows(asg), idx, asg),
        Best::merge,
    )
    .expect("non-empty search space");
    let infeasible = best.value < sys.rows.len();
    Ok(InfeasibilityCertificate {
        method: Method::Exhaustive,
        infeasible,
        rows: sys.rows.len(),
        searched: Some(total),
        max_satisfied_rows: best.value,
        best_assignment: Some(best.point),
        combination: None,
        contradiction: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MerminRow {
    pub operators: Vec<String>,
    /// Eigenvalue on the graph state as an ω-exponent.
    pub value_exp: u32,
    pub value: String,
    #[serde(skip)]
    pub word: PauliWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MerminTable {
    pub d: u32,
    pub rows: Vec<MerminRow>,
    pub pairwise_commuting: bool,
}

fn render_value(k: u32, d: u32) -> String {
    match k {
        0 => "+1".to_string(),
        k if 2 * k == d => "-1".to_string(),
        k => format!("ω^{k}"),
    }
}

/// The `n + 1` commuting observables of the paradox: each `g_v` with
/// value +1 and `X_V^†` with value `ω^W = −1`.
pub fn mermin_table(g: &WeightedGraph) -> Result<MerminTable> {
    let report = classify_ghz(g);
    if !report.is_ghz {
        let reasons: Vec<_> = report.failure_reasons.iter().map(|r| r.code()).collect();
        return Err(Error::NotGhz(reasons.join(", ")));
    }
    let d = g.d();
    let stab_style = RenderStyle {
        explicit_zero_z: true,
        dagger_x: false,
    };
    let mut rows = Vec::with_capacity(g.n() + 1);
    for v in 0..g.n() {
        let word = vertex_stabilizer(g, v)?;
        rows.push(MerminRow {
            operators: word.render_tokens(stab_style),
            value_exp: 0,
            value: render_value(0, d),
            word,
        });
    }
    // X_V = ω^{-W} Π g_v on a GHZ graph, so X_V^† has value ω^W
    let word = PauliWord::x_all(d, g.n()).adjoint();
    let value_exp = (report.total_weight % d as u64) as u32;
    rows.push(MerminRow {
        operators: vec!["X^†".to_string(); g.n()],
        value_exp,
        value: render_value(value_exp, d),
        word,
    });
    let mut pairwise_commuting = true;
    for (i, a) in rows.iter().enumerate() {
        for b in &rows[i + 1..] {
            pairwise_commuting &= a.word.commutes_with(&b.word)?;
        }
    }
    Ok(MerminTable {
        d,
        rows,
        pairwise_commuting,
    })
}

impl fmt::Display for MerminTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.rows.first().map_or(0, |r| r.operators.len());
        let widths: Vec<usize> = (0..cols)
            .map(|c| {
                self.rows
                    .iter()
                    .map(|r| r.operators[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for row in &self.rows {
            for (op, w) in row.operators.iter().zip(&widths) {
                write!(f, "{op:<w$}  ")?;
            }
            writeln!(f, "{}", row.value)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DLevel {
    Full,
    Weak,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Genuineness {
    pub n_partite: bool,
    pub d_level: DLevel,
}

pub fn genuineness(g: &WeightedGraph) -> Result<Genuineness> {
    let report = classify_ghz(g);
    if !report.is_ghz {
        let reasons: Vec<_> = report.failure_reasons.iter().map(|r| r.code()).collect();
        return Err(Error::NotGhz(reasons.join(", ")));
    }
    let d_level = if report.is_primary {
        DLevel::Full
    } else if report.is_weakly_primary {
        DLevel::Weak
    } else {
        DLevel::None
    };
    Ok(Genuineness {
        n_partite: report.connected,
        d_level,
    })
}
