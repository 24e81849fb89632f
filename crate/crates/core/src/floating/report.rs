//! Per-δ statistics and their extrapolation to δ = 0.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::numerics::fit::fit_power_law;
use crate::numerics::mc::McEstimate;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// Strictly decreasing thresholds.
    pub delta_grid: Vec<f64>,
    /// Raw volumes per δ.
    pub volume: Vec<McEstimate>,
    /// Normalized statistic per δ.
    pub statistic: Vec<McEstimate>,
    pub fit_exponent: f64,
    pub fitted_limit: f64,
    pub fitted_limit_std_error: f64,
    pub fit_residual: f64,
    /// Normalizing constant and its label.
    pub constant: f64,
    pub constant_label: String,
    /// Exact value the limit is compared against, when known.
    pub reference: Option<f64>,
}

impl ConvergenceReport {
    /// Builds the report from volumes: `statistic = constant · volume / δ^power`,
    /// then fits `statistic = a + b δ^fit_exponent`.
    pub fn from_volumes(
        delta_grid: &[f64],
        volume: Vec<McEstimate>,
        power: f64,
        constant: f64,
        constant_label: &str,
        fit_exponent: f64,
        reference: Option<f64>,
    ) -> Result<Self> {
        let statistic: Vec<McEstimate> = volume
            .iter()
            .zip(delta_grid)
            .map(|(v, d)| v.scaled(constant / d.powf(power)))
            .collect();
        let y: Vec<f64> = statistic.iter().map(|s| s.value).collect();
        let sigma: Vec<f64> = statistic.iter().map(|s| s.std_error).collect();
        let fit = fit_power_law(delta_grid, &y, &sigma, fit_exponent)?;
        Ok(ConvergenceReport {
            delta_grid: delta_grid.to_vec(),
            volume,
            statistic,
            fit_exponent,
            fitted_limit: fit.intercept,
            fitted_limit_std_error: fit.intercept_std_error,
            fit_residual: fit.residual,
            constant,
            constant_label: constant_label.to_string(),
            reference,
        })
    }

    /// `(fitted_limit - reference) / reference`.
    pub fn relative_gap(&self) -> Option<f64> {
        self.reference.map(|r| (self.fitted_limit - r) / r)
    }

    /// Statistic at the smallest δ over the statistic at the largest δ.
    pub fn tail_ratio(&self) -> f64 {
        self.statistic.last().unwrap().value / self.statistic[0].value
    }

    pub fn is_decreasing(&self) -> bool {
        self.statistic.windows(2).all(|w| w[1].value < w[0].value)
    }
}

pub(crate) fn validate_grid(delta_grid: &[f64], min_delta: f64) -> Result<()> {
    use crate::error::invalid;
    if delta_grid.len() < 2 {
        return invalid("delta_grid needs at least two values");
    }
    if delta_grid.windows(2).any(|w| !(w[1] < w[0])) {
        return invalid("delta_grid not decreasing");
    }
    if delta_grid.iter().any(|d| !(*d >= min_delta) || !d.is_finite()) {
        return invalid(format!("delta_grid values must be at least {min_delta}"));
    }
    Ok(())
}
