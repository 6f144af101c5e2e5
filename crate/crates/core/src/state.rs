//! Exact qudit graph states.
//!
//! A graph state has amplitude `d^{-n/2} ω^{e(s)}` on every basis tuple `s`,
//! so it is stored as the exponent table `e : Z_d^n → Z_d`. With Γ
//! symmetric and zero on the diagonal, `½ s·Γ·s = Σ_{u<v} Γ_uv s_u s_v`,
//! which keeps every exponent an integer.

use num_complex::Complex;
use serde::Serialize;

use crate::dense::{self, CMatrix, CVector};
use crate::error::{Error, Result};
use crate::graph::{classify_ghz, edge_pairs, WeightedGraph};
use crate::pauli::{stabilizer_product, vertex_stabilizer, PauliWord};
use crate::scalar::Real;
use crate::zd;

/// Default largest number of basis tuples in a [`PhaseState`].
pub const DEFAULT_STATE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseState {
    d: u32,
    n: usize,
    exponents: Vec<u32>,
}

impl PhaseState {
    /// The uniform superposition (all exponents zero).
    pub fn uniform(d: u32, n: usize, cap: u64) -> Result<Self> {
        let size = zd::check_space("state", d, n, cap)? as usize;
        Ok(Self {
            d,
            n,
            exponents: vec![0; size],
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exponents in row-major basis order, qudit 0 most significant.
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn exponent_at(&self, basis: &[u32]) -> u32 {
        self.exponents[zd::encode(basis, self.d) as usize]
    }

    fn check_word(&self, w: &PauliWord) -> Result<()> {
        if w.d() != self.d || w.n() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "word over (d = {}, n = {}) applied to state over (d = {}, n = {})",
                w.d(),
                w.n(),
                self.d,
                self.n
            )));
        }
        Ok(())
    }

    /// `W|ψ⟩` with `W|s⟩ = ω^{p + z·s}|s + x⟩`.
    pub fn apply_word(&self, w: &PauliWord) -> Result<Self> {
        self.check_word(w)?;
        let d = self.d;
        let mut out = vec![0u32; self.exponents.len()];
        let mut t = vec![0u32; self.n];
        let mut s = vec![0u32; self.n];
        for (index, slot) in out.iter_mut().enumerate() {
            zd::decode(index as u64, d, &mut t);
            let mut phase = w.phase() as u64;
            for v in 0..self.n {
                s[v] = zd::add(t[v], zd::neg(w.x_exp()[v], d), d);
                phase += w.z_exp()[v] as u64 * s[v] as u64;
            }
            phase += self.exponents[zd::encode(&s, d) as usize] as u64;
            *slot = (phase % d as u64) as u32;
        }
        Ok(Self {
            d,
            n: self.n,
            exponents: out,
        })
    }

    /// `Some(k)` when `W|ψ⟩ = ω^k|ψ⟩`, `None` when ψ is not an eigenstate.
    pub fn eigenvalue_of(&self, w: &PauliWord) -> Result<Option<u32>> {
        let image = self.apply_word(w)?;
        let shift = |i: usize| {
            zd::add(
                image.exponents[i],
                zd::neg(self.exponents[i], self.d),
                self.d,
            )
        };
        let k = shift(0);
        Ok((1..self.exponents.len())
            .all(|i| shift(i) == k)
            .then_some(k))
    }

    /// Unit vector with entries `ω^{e(s)} d^{-n/2}`.
    pub fn to_dense<T: Real>(&self, cap: u64) -> Result<CVector<T>> {
        let dim = dense::dimension(self.d, self.n, cap)?;
        let norm = T::one() / T::from_usize_lossy(dim).sqrt();
        Ok(CVector::<T>::from_iterator(
            dim,
            self.exponents
                .iter()
                .map(|&e| dense::omega::<T>(e, self.d) * norm),
        ))
    }

    /// `(basis tuple, exponent)` pairs in enumeration order.
    pub fn dump(&self) -> Vec<(Vec<u32>, u32)> {
        let mut basis = vec![0u32; self.n];
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                zd::decode(i as u64, self.d, &mut basis);
                (basis.clone(), e)
            })
            .collect()
    }
}

/// `|Γ⟩` with `e(s) = Σ_{u<v} Γ_uv s_u s_v mod d`.
pub fn build_state(g: &WeightedGraph, cap: u64) -> Result<PhaseState> {
    let mut state = PhaseState::uniform(g.d(), g.n(), cap)?;
    let d = g.d() as u64;
    let edges: Vec<_> = edge_pairs(g.n())
        .map(|(u, v)| (u, v, g.weight(u, v) as u64))
        .filter(|e| e.2 != 0)
        .collect();
    let mut s = vec![0u32; g.n()];
    for (index, slot) in state.exponents.iter_mut().enumerate() {
        zd::decode(index as u64, g.d(), &mut s);
        let e: u64 = edges
            .iter()
            .map(|&(u, v, w)| w * s[u] as u64 * s[v] as u64)
            .sum();
        *slot = (e % d) as u32;
    }
    Ok(state)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerReport {
    pub d: u32,
    pub n: usize,
    pub is_ghz: bool,
    /// Eigen-exponent of each `g_v` on `|Γ⟩`; all must be `Some(0)`.
    pub vertex_eigen: Vec<Option<u32>>,
    pub vertex_stabilizers_pass: bool,
    /// `Π g_v` as computed, against `ω^{W} X_V Π Z_v^{D_v}` reduced mod d.
    pub product: String,
    pub product_expected: String,
    pub product_identity_pass: bool,
    /// Eigen-exponent of `X_V` on `|Γ⟩` (`None`: not an eigenstate).
    pub x_all_eigen: Option<u32>,
    /// `Some(d/2)` for GHZ graphs; `None` when the graph is not GHZ and no
    /// particular value is expected.
    pub x_all_expected: Option<u32>,
    pub x_all_pass: Option<bool>,
    pub all_pass: bool,
}

/// Checks the stabilizer relations of `|Γ⟩` exactly.
pub fn verify_stabilizers(g: &WeightedGraph, cap: u64) -> Result<StabilizerReport> {
    let d = g.d();
    let n = g.n();
    let state = build_state(g, cap)?;
    let report = classify_ghz(g);

    let vertex_eigen = (0..n)
        .map(|v| state.eigenvalue_of(&vertex_stabilizer(g, v)?))
        .collect::<Result<Vec<_>>>()?;
    let vertex_stabilizers_pass = vertex_eigen.iter().all(|e| *e == Some(0));

    let all: Vec<usize> = (0..n).collect();
    let product = stabilizer_product(g, &all)?;
    let expected = PauliWord::from_parts(
        d,
        (g.total_weight() % d as u64) as u32,
        vec![1; n],
        g.degrees().iter().map(|&x| (x % d as u64) as u32).collect(),
    )?;
    let product_identity_pass = product == expected;

    let x_all_eigen = state.eigenvalue_of(&PauliWord::x_all(d, n))?;
    let x_all_expected = report.is_ghz.then_some(d / 2);
    let x_all_pass = x_all_expected.map(|k| x_all_eigen == Some(k));

    Ok(StabilizerReport {
        d,
        n,
        is_ghz: report.is_ghz,
        all_pass: vertex_stabilizers_pass && product_identity_pass && x_all_pass != Some(false),
        vertex_eigen,
        vertex_stabilizers_pass,
        product: product.to_string(),
        product_expected: expected.to_string(),
        product_identity_pass,
        x_all_eigen,
        x_all_expected,
        x_all_pass,
    })
}

/// Dimension of the joint +1 eigenspace of all vertex stabilizers, from
/// the trace of `Π_v (1/d) Σ_k g_v^k` built densely out of single-qudit
/// shift and clock matrices.
pub fn joint_plus_one_dimension<T: Real>(g: &WeightedGraph, cap: u64) -> Result<T> {
    let d = g.d();
    let n = g.n();
    let dim = dense::dimension(d, n, cap)?;
    let inv_d = T::one() / T::from_usize_lossy(d as usize);
    let mut acc: CMatrix<T> = dense::identity(dim);
    for v in 0..n {
        let factors: Vec<_> = (0..n)
            .map(|u| dense::local_factor::<T>(d, (u == v) as u32, g.weight(u, v)))
            .collect();
        let gv = dense::kron_all(&factors);
        let mut projector = dense::identity::<T>(dim);
        let mut power = dense::identity::<T>(dim);
        for _ in 1..d {
            power = dense::matmul(&power, &gv);
            projector += &power;
        }
        projector *= Complex::new(inv_d, T::zero());
        acc = dense::matmul(&projector, &acc);
    }
    Ok(acc.trace().re)
}
