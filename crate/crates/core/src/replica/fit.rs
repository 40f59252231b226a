use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `value ≈ prefactor · cutoff^exponent`, with the rms residual of the
/// log-log fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub prefactor: f64,
    pub exponent: f64,
    pub residual: f64,
}

/// Ordinary least squares of `ln y` on `ln x`. Needs two distinct positive
/// abscissae and positive ordinates.
pub fn log_log_fit(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 2 {
        return Err(Error::DegenerateFit(format!("need at least two points, got {}", points.len())));
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(Error::DegenerateFit(format!("log-log fit needs positive finite data, got ({x}, {y})")));
    }
    let n = points.len() as f64;
    let logs: Vec<(f64, f64)> = points.iter().map(|(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx <= 1e-24 * n {
        return Err(Error::DegenerateFit("abscissae have zero spread".to_string()));
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let residual = (logs.iter().map(|p| (p.1 - intercept - exponent * p.0).powi(2)).sum::<f64>() / n).sqrt();
    Ok(PowerLawFit { prefactor: intercept.exp(), exponent, residual })
}

/// Fit of a cutoff sweep `(Λ, S/V)`; at least four points spanning a factor
/// of three in `Λ`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 4 {
        return Err(Error::DegenerateFit(format!("need at least four points, got {}", points.len())));
    }
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    if !(lo > 0.0 && hi >= 3.0 * lo) {
        return Err(Error::DegenerateFit(format!("cutoffs must span a factor of 3, got [{lo}, {hi}]")));
    }
    log_log_fit(points)
}
