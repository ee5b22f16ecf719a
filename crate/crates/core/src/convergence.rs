//! Log-log slope fits for the perturbative order checks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tolerances::EXACT_FLOOR;

/// Outcome of a convergence study `r(t)` over a sequence of scales `t`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    /// Least-squares slope of `ln r` against `ln t`; `None` when every
    /// residual sits below [`EXACT_FLOOR`] and the identity is exact.
    pub slope: Option<f64>,
    pub t: Vec<f64>,
    pub residuals: Vec<f64>,
}

impl SlopeFit {
    pub fn is_exact(&self) -> bool {
        self.slope.is_none()
    }

    /// Exact identities pass any slope threshold.
    pub fn meets(&self, min_slope: f64) -> bool {
        self.slope.is_none_or(|s| s >= min_slope)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// A scale sequence must have at least two positive, finite points spanning
/// two decades.
pub fn validate_sequence(t: &[f64]) -> Result<()> {
    if t.len() < 2 {
        return Err(Error::InvalidSequence(format!("need at least two points, got {}", t.len())));
    }
    if let Some(bad) = t.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::InvalidSequence(format!("scale {bad} is not positive and finite")));
    }
    let (lo, hi) = t.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    if hi / lo < 99.999 {
        return Err(Error::InvalidSequence(format!("scales span {lo}..{hi}, less than two decades")));
    }
    Ok(())
}

/// Evaluate `residual` at each scale and fit the slope of `ln r` vs `ln t`.
pub fn fit_order(t: &[f64], mut residual: impl FnMut(f64) -> Result<f64>) -> Result<SlopeFit> {
    validate_sequence(t)?;
    let residuals = t.iter().map(|&x| residual(x)).collect::<Result<Vec<_>>>()?;
    fit_residuals(t.to_vec(), residuals)
}

pub fn fit_residuals(t: Vec<f64>, residuals: Vec<f64>) -> Result<SlopeFit> {
    if residuals.iter().all(|&r| r <= EXACT_FLOOR) {
        return Ok(SlopeFit { slope: None, t, residuals });
    }
    // Points that hit exact zero carry no slope information.
    let pts: Vec<(f64, f64)> = t
        .iter()
        .zip(&residuals)
        .filter(|(_, r)| **r > 0.0 && r.is_finite())
        .map(|(x, r)| (x.ln(), r.ln()))
        .collect();
    if pts.len() < 2 {
        return Err(Error::InvalidSequence("fewer than two nonzero residuals to fit".into()));
    }
    Ok(SlopeFit { slope: Some(least_squares_slope(&pts)), t, residuals })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let (mx, my) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (mx / n, my / n);
    let (sxy, sxx) = pts
        .iter()
        .fold((0.0, 0.0), |(sxy, sxx), (x, y)| (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx)));
    sxy / sxx
}
