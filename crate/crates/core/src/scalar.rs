//! Floating-point scalars used for objective values and dense cross-checks.
//!
//! All feasibility structure lives in integer exponents over Z_d; a `Real`
//! only appears when a cosine or a matrix entry has to be evaluated.

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};
use std::fmt::{Debug, Display};

pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Default + Send + Sync + 'static
{
    /// Agreement tolerance between two independent routes to one real value.
    fn cross_check_tol() -> Self;
    /// Tolerance for entrywise matrix identities.
    fn identity_tol() -> Self;

    fn from_usize_lossy(v: usize) -> Self {
        <Self as FromPrimitive>::from_usize(v).expect("usize converts to float")
    }

    fn from_f64_lossy(v: f64) -> Self {
        <Self as FromPrimitive>::from_f64(v).expect("f64 converts to float")
    }
}

impl Real for f64 {
    fn cross_check_tol() -> f64 {
        1e-9
    }
    fn identity_tol() -> f64 {
        1e-12
    }
}

impl Real for f32 {
    fn cross_check_tol() -> f32 {
        1e-4
    }
    fn identity_tol() -> f32 {
        1e-5
    }
}

/// `cos(2πk/d)`, the real part of ω^k.
pub fn cos_omega<F: Real>(k: u32, d: u32) -> F {
    let angle = F::TAU() * F::from_usize_lossy(k as usize) / F::from_usize_lossy(d as usize);
    angle.cos()
}

/// Lookup table of `cos(2πk/d)` for k in 0..d.
pub fn cos_table<F: Real>(d: u32) -> Vec<F> {
    (0..d).map(|k| cos_omega(k, d)).collect()
}
