//! Normalized wet volumes `C_n · vol(wet) / δ^{1/(n+1)}` and their extrapolation.

use serde::{Deserialize, Serialize};

use super::family::{sublevel_quantiles, PeakFamily};
use super::wet::{holo_wet_volume_with, WetMode};
use crate::cr::{fefferman_total, Domain};
use crate::error::{invalid, Result};
use crate::floating::report::{validate_grid, ConvergenceReport};
use crate::numerics::mc::McEstimate;
use crate::numerics::special::gamma_fn;

/// Smallest admissible δ.
pub const MIN_DELTA: f64 = 1e-9;

/// Samples used for the reference boundary total.
pub const REFERENCE_SAMPLES: u64 = 1 << 20;

/// `(2^{2n−2} π^{n−1/2} Γ(n/2) / ((n+1) Γ((n+1)/2) Γ(n)))^{1/(n+1)}`
pub fn holo_constant(n: usize) -> Result<f64> {
    if n == 0 {
        return invalid("dimension must be at least 1");
    }
    let m = n as f64;
    let num = 2f64.powf(2.0 * m - 2.0) * std::f64::consts::PI.powf(m - 0.5) * gamma_fn(m / 2.0)?;
    let den = (m + 1.0) * gamma_fn((m + 1.0) / 2.0)? * gamma_fn(m)?;
    Ok((num / den).powf(1.0 / (m + 1.0)))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HoloStudyOptions {
    pub family_size: usize,
    /// Samples per peak and threshold for the quantile tables.
    pub quantile_samples: u64,
    pub mode: WetMode,
    /// Defaults to `1/(n+1)`.
    pub fit_exponent: Option<f64>,
    /// Repeat with twice the family size and compare.
    pub saturation: bool,
}

impl Default for HoloStudyOptions {
    fn default() -> Self {
        HoloStudyOptions { family_size: 2048, quantile_samples: 20_000, mode: WetMode::Continuous, fit_exponent: None, saturation: false }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SaturationCheck {
    pub family_size: usize,
    pub statistic: Vec<McEstimate>,
    /// Largest `|s_K − s_2K| / max(se_K, se_2K)` over the grid.
    pub max_gap_in_std_errors: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HoloStudy {
    pub report: ConvergenceReport,
    pub family_size: usize,
    pub mode: WetMode,
    /// Mean threshold over the family per δ.
    pub mean_eta: Vec<f64>,
    /// Per δ, relative standard error of the sublevel volume at the
    /// tabulated thresholds; it is not included in the statistic's error.
    pub quantile_rel_error: Vec<f64>,
    pub saturation: Option<SaturationCheck>,
}

fn wet_volumes(domain: &Domain, family: &PeakFamily, grid: &[f64], samples: u64, seed: u64, mode: WetMode) -> Result<Vec<McEstimate>> {
    grid.iter()
        .enumerate()
        .map(|(i, d)| holo_wet_volume_with(domain, family, *d, samples, seed, i as u64, mode))
        .collect()
}

fn tables(domain: &Domain, size: usize, grid: &[f64], opts: &HoloStudyOptions, seed: u64) -> Result<PeakFamily> {
    let family = PeakFamily::for_domain(domain, size)?;
    sublevel_quantiles(domain, family, grid, opts.quantile_samples, seed)
}

/// Wet volumes over a decreasing δ grid, normalized by `C_n / δ^{1/(n+1)}`
/// and fitted as `a + b δ^s`; the reference is `∫ σ` when the domain has a
/// Fefferman measure.
pub fn holo_limit_study(domain: &Domain, delta_grid: &[f64], samples: u64, seed: u64, opts: &HoloStudyOptions) -> Result<HoloStudy> {
    validate_grid(delta_grid, MIN_DELTA)?;
    if opts.family_size == 0 {
        return invalid("family size must be positive");
    }
    let n = domain.n();
    let power = 1.0 / (n as f64 + 1.0);
    let family = tables(domain, opts.family_size, delta_grid, opts, seed)?;
    let volumes = wet_volumes(domain, &family, delta_grid, samples, seed, opts.mode)?;
    let reference = if domain.is_polydisk() { None } else { Some(fefferman_total(domain, REFERENCE_SAMPLES, seed)?.value) };
    let report = ConvergenceReport::from_volumes(
        delta_grid,
        volumes,
        power,
        holo_constant(n)?,
        "C_n",
        opts.fit_exponent.unwrap_or(power),
        reference,
    )?;
    let mean_eta = (0..delta_grid.len())
        .map(|i| family.eta.iter().map(|r| r[i]).sum::<f64>() / family.len() as f64)
        .collect();
    let saturation = if opts.saturation {
        let doubled = tables(domain, 2 * opts.family_size, delta_grid, opts, seed)?;
        let statistic: Vec<McEstimate> = wet_volumes(domain, &doubled, delta_grid, samples, seed, opts.mode)?
            .into_iter()
            .zip(delta_grid)
            .map(|(v, d)| v.scaled(report.constant / d.powf(power)))
            .collect();
        let gap = statistic
            .iter()
            .zip(&report.statistic)
            .map(|(a, b)| {
                let se = a.std_error.max(b.std_error).max(1e-12 * a.value.abs());
                let diff = (a.value - b.value).abs();
                if se > 0.0 {
                    diff / se
                } else if diff == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max);
        Some(SaturationCheck { family_size: 2 * opts.family_size, statistic, max_gap_in_std_errors: gap, passed: gap <= 1.0 })
    } else {
        None
    };
    Ok(HoloStudy { report, family_size: family.len(), mode: opts.mode, mean_eta, quantile_rel_error: family.quantile_rel_error.clone(), saturation })
}
