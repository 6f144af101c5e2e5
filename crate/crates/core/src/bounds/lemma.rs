//! `C_{n,d} = max f` over the lattice `{θ, 2θ, …, dθ}^n`, `θ = 2π/d`, where
//! `f(x) = Σ_i cos x_i − cos(Σ_i x_i)`.
//!
//! Three routes: the closed form in `λ = d / (2(n+1))`, a sweep over the
//! points with `m` coordinates at `(⌊λ⌋+1)θ` and the rest at `⌊λ⌋θ`, and a
//! brute-force scan of the whole lattice.

use serde::Serialize;

use super::{BoundKind, BoundReport, OracleAgreement, Witness};
use crate::error::{Error, Result};
use crate::lattice::{par_scan, Best};
use crate::scalar::{cos_omega, cos_table, Real};
use crate::zd;

pub fn lemma_f<F: Real>(x: &[F]) -> Result<F> {
    if x.is_empty() {
        return Err(Error::InvalidBounds(
            "f needs at least one coordinate".into(),
        ));
    }
    let sum = x.iter().fold(F::zero(), |a, &b| a + b);
    Ok(x.iter().fold(F::zero(), |a, &b| a + b.cos()) - sum.cos())
}

/// `λ = d / (2(n+1))` split into integer part and remainder over `2(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeSplit {
    pub floor: u32,
    /// `(λ − ⌊λ⌋) · 2(n+1)`; also equals `δ = d/2 − (n+1)⌊λ⌋` times two.
    pub remainder: u32,
    pub denominator: u32,
}

impl LatticeSplit {
    fn new(n: usize, d: u32) -> Self {
        let denominator = 2 * (n as u32 + 1);
        Self {
            floor: d / denominator,
            remainder: d % denominator,
            denominator,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.remainder == 0
    }

    fn frac<F: Real>(&self) -> F {
        F::from_usize_lossy(self.remainder as usize)
            / F::from_usize_lossy(self.denominator as usize)
    }
}

fn check_args(n: usize, d: u32) -> Result<()> {
    zd::require_even(d)?;
    if n == 0 {
        return Err(Error::InvalidBounds("n must be at least 1".into()));
    }
    Ok(())
}

/// Closed form of `C_{n,d}`, cross-checked against the two special cases
/// whenever they apply.
pub fn lemma_c_closed<F: Real>(n: usize, d: u32) -> Result<F> {
    check_args(n, d)?;
    let split = LatticeSplit::new(n, d);
    let ceil = split.floor + (!split.is_integral()) as u32;
    let frac: F = split.frac();
    let np1 = F::from_usize_lossy(n + 1);
    let value =
        np1 * (frac * cos_omega::<F>(ceil, d) + (F::one() - frac) * cos_omega::<F>(split.floor, d));

    let tol = F::cross_check_tol();
    if 2 * n >= d as usize {
        let df = F::from_usize_lossy(d as usize);
        let s = (F::PI() / df).sin();
        let special = np1 - df * s * s;
        if (special - value).abs() > tol {
            return Err(Error::CrossCheck(format!(
                "C({n},{d}): general form {value} vs n >= d/2 form {special}"
            )));
        }
    }
    if split.is_integral() {
        let special = np1 * (F::PI() / np1).cos();
        if (special - value).abs() > tol {
            return Err(Error::CrossCheck(format!(
                "C({n},{d}): general form {value} vs integral-λ form {special}"
            )));
        }
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FmSweep<F> {
    pub n: usize,
    pub d: u32,
    /// `⌊λ⌋`; the low coordinate is `⌊λ⌋θ`, the high one `(⌊λ⌋+1)θ`.
    pub low: u32,
    /// `δ = d/2 − (n+1)⌊λ⌋`.
    pub delta: usize,
    /// `F_m` for `m = 0..=n`.
    pub values: Vec<F>,
    pub max: F,
    pub argmax: usize,
    /// `Δ_m = (F_{m+1} − F_m) / (2 sin(θ/2))` for `m = 0..n`.
    pub increments: Vec<F>,
}

impl<F: Real> FmSweep<F> {
    /// For `d/2 > n`: `Δ_m ≥ 0` below `δ` and `Δ_m ≤ 0` above it.
    pub fn sign_pattern_holds(&self, tol: F) -> bool {
        if self.d as usize <= 2 * self.n {
            return true;
        }
        self.increments.iter().enumerate().all(|(m, &inc)| {
            if m < self.delta {
                inc >= -tol
            } else if m > self.delta {
                inc <= tol
            } else {
                true
            }
        })
    }

    /// The lattice point (exponents of θ in `1..=d`) realizing `F_m`.
    pub fn point(&self, m: usize) -> Vec<u32> {
        let lift = |k: u32| {
            if k.is_multiple_of(self.d) {
                self.d
            } else {
                k % self.d
            }
        };
        (0..self.n)
            .map(|i| {
                if i < m {
                    lift(self.low + 1)
                } else {
                    lift(self.low)
                }
            })
            .collect()
    }
}

/// Evaluates `F_m` for every `m`, checks the increment identity and that
/// the maximum equals the closed form.
pub fn lemma_fm_sweep<F: Real>(n: usize, d: u32) -> Result<FmSweep<F>> {
    check_args(n, d)?;
    let split = LatticeSplit::new(n, d);
    let low = split.floor;
    let high = low + 1;
    let nu = n as u32;
    // F_m = m cos x+ + (n−m) cos x− − cos(mθ + n x−), exponents mod d
    let values: Vec<F> = (0..=nu)
        .map(|m| {
            F::from_usize_lossy(m as usize) * cos_omega::<F>(high % d, d)
                + F::from_usize_lossy((nu - m) as usize) * cos_omega::<F>(low % d, d)
                - cos_omega::<F>(((m + nu * low) as u64 % d as u64) as u32, d)
        })
        .collect();
    let theta = F::TAU() / F::from_usize_lossy(d as usize);
    let two = F::one() + F::one();
    let scale = two * (theta / two).sin();
    let increments: Vec<F> = values.windows(2).map(|w| (w[1] - w[0]) / scale).collect();

    let tol = F::cross_check_tol();
    let x_lo = theta * F::from_usize_lossy(low as usize);
    let x_hi = theta * F::from_usize_lossy(high as usize);
    let nf = F::from_usize_lossy(n);
    for (m, &inc) in increments.iter().enumerate() {
        let mf = F::from_usize_lossy(m);
        let formula = ((two * nf * x_lo + (two * mf + F::one()) * theta) / two).sin()
            - ((x_lo + x_hi) / two).sin();
        if (formula - inc).abs() > tol {
            return Err(Error::CrossCheck(format!(
                "Δ_{m} for (n={n}, d={d}): difference {inc} vs closed {formula}"
            )));
        }
    }

    let mut argmax = 0;
    for (m, &v) in values.iter().enumerate() {
        if v > values[argmax] {
            argmax = m;
        }
    }
    let max = values[argmax];
    let closed: F = lemma_c_closed(n, d)?;
    if (closed - max).abs() > tol {
        return Err(Error::CrossCheck(format!(
            "C({n},{d}): F_m sweep max {max} vs closed form {closed}"
        )));
    }
    let delta = (d / 2 - (n as u32 + 1) * low) as usize;
    Ok(FmSweep {
        n,
        d,
        low,
        delta,
        values,
        max,
        argmax,
        increments,
    })
}

pub fn lemma_fm_max<F: Real>(n: usize, d: u32) -> Result<F> {
    Ok(lemma_fm_sweep::<F>(n, d)?.max)
}

/// Scans all `d^n` lattice points. The closed form, when `d` is even, is
/// attached as the comparison value.
pub fn lemma_brute_max<F: Real>(n: usize, d: u32, cap: u64) -> Result<BoundReport<F>> {
    zd::check_modulus(d)?;
    if n == 0 {
        return Err(Error::InvalidBounds("n must be at least 1".into()));
    }
    let total = zd::check_space("lemma lattice", d, n, cap)?;
    let cos = cos_table::<F>(d);
    let best = par_scan(
        d,
        n,
        total,
        || None,
        |acc, idx, x| {
            let mut sum = 0u64;
            let mut value = F::zero();
            for &k in x {
                value += cos[k as usize];
                sum += k as u64;
            }
            value -= cos[(sum % d as u64) as usize];
            Best::offer(acc, value, idx, x);
        },
        Best::merge,
    )
    .expect("non-empty lattice");

    let closed = if d.is_multiple_of(2) {
        Some(lemma_c_closed::<F>(n, d)?)
    } else {
        None
    };
    let witness = best
        .point
        .iter()
        .map(|&k| if k == 0 { d } else { k })
        .collect();
    let mut notes = vec![format!("scanned {total} lattice points")];
    if closed.is_none() {
        notes.push("odd d: no closed form to compare against".into());
    }
    // the brute-force maximum is the bound here; the closed form checks it
    Ok(BoundReport {
        kind: BoundKind::Lemma,
        n,
        d,
        classical_bound: best.value,
        classical_witness: Some(Witness::Lattice(witness)),
        quantum_value: None,
        oracle_value: closed,
        oracle_agreement: OracleAgreement::from_values(best.value, closed, F::cross_check_tol()),
        notes,
    })
}
