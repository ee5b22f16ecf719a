//! Small dense complex kernels: Kronecker products, commutators, norms and
//! functions of a weight operator.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

#[inline]
pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// `a ⊗ b` with the left factor varying slowest.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

/// Largest entry modulus.
pub fn max_norm(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.norm()))
}

/// `max_norm(a - b)`; `inf` on shape mismatch.
pub fn max_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn is_diagonal(m: &CMatrix) -> bool {
    m.is_square()
        && m.iter().enumerate().all(|(idx, x)| {
            let (r, col) = (idx % m.nrows(), idx / m.nrows());
            r == col || *x == Complex64::new(0.0, 0.0)
        })
}

/// `P` with `P (b ⊗ a) = a ⊗ b`, mapping the `d2·d1` space onto the `d1·d2` one.
pub fn flip_permutation(d1: usize, d2: usize) -> CMatrix {
    let mut p = CMatrix::zeros(d1 * d2, d1 * d2);
    for i in 0..d1 {
        for k in 0..d2 {
            p[(i * d2 + k, k * d1 + i)] = c(1.0);
        }
    }
    p
}

/// `f(X3)` for a weight operator `X3`.
///
/// `X3` must be diagonalizable with spectrum in `½ℤ`, which the grading
/// `[X3, X±] = ±X±` guarantees for every module built in this crate. A
/// diagonal `X3` is handled entrywise. Otherwise the eigenvalues are read off
/// a Schur form, snapped to the half-integer lattice, and `f` is applied via
/// the Lagrange-Sylvester interpolation `Σ_λ f(λ) Π_{μ≠λ} (X3 - μ)/(λ - μ)`.
pub fn weight_function(x3: &CMatrix, f: impl Fn(f64) -> Complex64) -> Result<CMatrix> {
    let n = x3.nrows();
    if !x3.is_square() {
        return Err(Error::DimensionMismatch(format!("weight operator is {}x{}", n, x3.ncols())));
    }
    if is_diagonal(x3) {
        return Ok(CMatrix::from_diagonal(&x3.diagonal().map(|w| f(w.re))));
    }
    let spectrum = half_integer_spectrum(x3)?;
    let eye = identity(n);
    let mut out = CMatrix::zeros(n, n);
    for (i, &lam) in spectrum.iter().enumerate() {
        let mut proj = eye.clone();
        for (k, &mu) in spectrum.iter().enumerate() {
            if k != i {
                proj = proj * (x3 - &eye * c(mu)) / c(lam - mu);
            }
        }
        out += proj * f(lam);
    }
    Ok(out)
}

/// Distinct eigenvalues of a graded weight operator, snapped to `½ℤ`.
fn half_integer_spectrum(x3: &CMatrix) -> Result<Vec<f64>> {
    let eig = nalgebra::Schur::new(x3.clone())
        .eigenvalues()
        .ok_or_else(|| Error::DecompositionFailure("Schur form of the weight operator".into()))?;
    let mut twice: Vec<i64> = Vec::with_capacity(eig.len());
    for e in eig.iter() {
        let t = (2.0 * e.re).round();
        if (2.0 * e.re - t).abs() > 1e-6 || e.im.abs() > 1e-6 {
            return Err(Error::DecompositionFailure(format!("weight eigenvalue {e} is not a half-integer")));
        }
        twice.push(t as i64);
    }
    twice.sort_unstable();
    twice.dedup();
    Ok(twice.into_iter().map(|t| t as f64 / 2.0).collect())
}
