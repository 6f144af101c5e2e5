//! Dense complex matrices used as an independent check on the symbolic
//! algebra. Qudit 0 is the most significant digit of a basis index.
//!
//! Weyl operators are monomial matrices (one nonzero per row and column),
//! so products here skip zero entries of the left factor; that keeps a
//! `d^n`-dimensional product at `O(nnz · d^n)` instead of cubic.

use nalgebra::{DMatrix, DVector, RealField};
use num_complex::Complex;

use crate::error::Result;
use crate::pauli::PauliWord;
use crate::scalar::Real;
use crate::zd;

pub type CMatrix<T> = DMatrix<Complex<T>>;
pub type CVector<T> = DVector<Complex<T>>;

/// Default largest Hilbert-space dimension for dense work.
pub const DEFAULT_DENSE_CAP: u64 = 4096;

/// ω^k = exp(2πik/d).
pub fn omega<T: Real>(k: u32, d: u32) -> Complex<T> {
    let angle = T::TAU() * T::from_usize_lossy((k % d) as usize) / T::from_usize_lossy(d as usize);
    Complex::new(angle.cos(), angle.sin())
}

/// Hilbert-space dimension `d^n`, refused above `cap`.
pub fn dimension(d: u32, n: usize, cap: u64) -> Result<usize> {
    Ok(zd::check_space("dense", d, n, cap)? as usize)
}

/// Builds the matrix of a word straight from `W|s⟩ = ω^{p + z·s}|s + x⟩`.
pub fn to_matrix<T: Real>(w: &PauliWord, cap: u64) -> Result<CMatrix<T>> {
    let d = w.d();
    let n = w.n();
    let dim = dimension(d, n, cap)?;
    let mut m = CMatrix::<T>::zeros(dim, dim);
    let mut s = vec![0u32; n];
    let mut t = vec![0u32; n];
    for col in 0..dim {
        zd::decode(col as u64, d, &mut s);
        let mut phase = w.phase() as u64;
        for v in 0..n {
            phase += (w.z_exp()[v] as u64) * (s[v] as u64);
            t[v] = zd::add(s[v], w.x_exp()[v], d);
        }
        let row = zd::encode(&t, d) as usize;
        m[(row, col)] = omega((phase % d as u64) as u32, d);
    }
    Ok(m)
}

/// Single-qudit shift `X|s⟩ = |s+1⟩`.
pub fn shift<T: Real>(d: u32) -> CMatrix<T> {
    let dim = d as usize;
    let mut m = CMatrix::<T>::zeros(dim, dim);
    for s in 0..dim {
        m[((s + 1) % dim, s)] = Complex::new(T::one(), T::zero());
    }
    m
}

/// Single-qudit clock `Z|s⟩ = ω^s|s⟩`.
pub fn clock<T: Real>(d: u32) -> CMatrix<T> {
    let dim = d as usize;
    let mut m = CMatrix::<T>::zeros(dim, dim);
    for s in 0..dim {
        m[(s, s)] = omega(s as u32, d);
    }
    m
}

pub fn identity<T: Real>(dim: usize) -> CMatrix<T> {
    CMatrix::<T>::identity(dim, dim)
}

/// `a · b`, skipping zero entries of `a`.
pub fn matmul<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    assert_eq!(a.ncols(), b.nrows(), "inner dimensions differ");
    let mut out = CMatrix::<T>::zeros(a.nrows(), b.ncols());
    let zero = Complex::new(T::zero(), T::zero());
    for k in 0..a.ncols() {
        for i in 0..a.nrows() {
            let aik = a[(i, k)];
            if aik == zero {
                continue;
            }
            for j in 0..b.ncols() {
                let bkj = b[(k, j)];
                if bkj != zero {
                    out[(i, j)] += aik * bkj;
                }
            }
        }
    }
    out
}

pub fn matpow<T: Real>(m: &CMatrix<T>, k: u64) -> CMatrix<T> {
    let mut acc = identity::<T>(m.nrows());
    for _ in 0..k {
        acc = matmul(&acc, m);
    }
    acc
}

/// Kronecker product, left factor on the more significant index.
pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::<T>::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let aij = a[(i, j)];
            if aij == Complex::new(T::zero(), T::zero()) {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    out[(i * br + k, j * bc + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Tensor product of one factor per qudit, qudit 0 first.
pub fn kron_all<T: Real>(factors: &[CMatrix<T>]) -> CMatrix<T> {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| kron(&acc, f))
}

/// Conjugate transpose.
pub fn dagger<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    m.transpose().map(|c| c.conj())
}

pub fn max_abs_diff<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> T {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (*x - *y).norm())
        .fold(T::zero(), |m, v| m.max(v))
}

/// Scalar `c` such that `m ≈ c·I`, with the entrywise deviation from `c·I`.
pub fn scalar_part<T: Real>(m: &CMatrix<T>) -> (Complex<T>, T) {
    let c = m[(0, 0)];
    let target = identity::<T>(m.nrows()) * c;
    (c, max_abs_diff(m, &target))
}

/// `⟨ψ|M|ψ⟩`.
pub fn expectation<T: Real>(psi: &CVector<T>, m: &CMatrix<T>) -> Complex<T> {
    let mpsi = m * psi;
    psi.iter()
        .zip(mpsi.iter())
        .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
            acc + a.conj() * b
        })
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues<T>(m: &CMatrix<T>) -> Vec<T>
where
    T: Real + RealField,
{
    let values = m.clone().symmetric_eigenvalues();
    let mut out: Vec<T> = values.iter().copied().collect();
    out.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    out
}

/// Single-qudit factor `X^x Z^z` as a dense `d × d` matrix.
pub fn local_factor<T: Real>(d: u32, x: u32, z: u32) -> CMatrix<T> {
    matmul(
        &matpow(&shift::<T>(d), x as u64),
        &matpow(&clock::<T>(d), z as u64),
    )
}
