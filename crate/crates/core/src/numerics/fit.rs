//! Power-law extrapolation `y(δ) = a + b δ^s`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerFit {
    /// Extrapolated value at δ = 0.
    pub intercept: f64,
    pub slope: f64,
    pub exponent: f64,
    /// Standard error of the intercept (from the weights when weighted,
    /// from the residual scatter otherwise).
    pub intercept_std_error: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

/// Least-squares fit of `y = a + b x^s`. When every `sigma` is positive the
/// fit is weighted by `1/sigma^2`; otherwise it is unweighted.
pub fn fit_power_law(x: &[f64], y: &[f64], sigma: &[f64], exponent: f64) -> Result<PowerFit> {
    if x.len() != y.len() || x.len() != sigma.len() {
        return invalid("fit inputs must have equal length");
    }
    if x.len() < 2 {
        return invalid("fit needs at least two points");
    }
    let weighted = sigma.iter().all(|s| *s > 0.0);
    let (mut sw, mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..x.len() {
        let w = if weighted { 1.0 / (sigma[i] * sigma[i]) } else { 1.0 };
        let t = x[i].powf(exponent);
        sw += w;
        sx += w * t;
        sy += w * y[i];
        sxx += w * t * t;
        sxy += w * t * y[i];
    }
    let den = sw * sxx - sx * sx;
    if den.abs() <= 1e-300 {
        return invalid("degenerate fit design (all abscissae equal)");
    }
    let slope = (sw * sxy - sx * sy) / den;
    let intercept = (sy - slope * sx) / sw;
    let rss: f64 = x
        .iter()
        .zip(y)
        .map(|(xi, yi)| (yi - intercept - slope * xi.powf(exponent)).powi(2))
        .sum();
    let m = x.len() as f64;
    let var_a = if weighted {
        sxx / den
    } else if x.len() > 2 {
        rss / (m - 2.0) * sxx / den
    } else {
        0.0
    };
    Ok(PowerFit { intercept, slope, exponent, intercept_std_error: var_a.max(0.0).sqrt(), residual: (rss / m).sqrt() })
}
