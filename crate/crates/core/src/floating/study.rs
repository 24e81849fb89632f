//! Convergence of `c_n vol(K_δ) / δ^{2/(n+1)}` to the affine surface area.

use serde::{Deserialize, Serialize};

use super::constants::{c_n_constant, Convention};
use super::report::{validate_grid, ConvergenceReport};
use super::wet::{ellipsoidal_reduction, wet_volume_exact, wet_volumes};
use crate::convex::body::ConvexBody;
use crate::error::{Error, Result};
use crate::numerics::mc::McEstimate;
use crate::numerics::special::unit_sphere_area;

/// Smallest admissible δ.
pub const MIN_DELTA: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WetPath {
    /// Exact when available, Monte Carlo otherwise.
    Auto,
    Exact,
    MonteCarlo,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AsaStudyOptions {
    pub convention: Convention,
    /// Defaults to `2/(n+1)`.
    pub fit_exponent: Option<f64>,
    pub path: WetPath,
}

impl Default for AsaStudyOptions {
    fn default() -> Self {
        AsaStudyOptions { convention: Convention::Oracle, fit_exponent: None, path: WetPath::Auto }
    }
}

/// Affine surface area in closed form for affine images of the ball:
/// `|S^{n-1}| · J^{(n-1)/(n+1)}`.
pub fn exact_affine_surface_area(body: &ConvexBody) -> Option<f64> {
    let (n, jac) = ellipsoidal_reduction(body)?;
    let m = n as f64;
    Some(unit_sphere_area(n) * jac.powf((m - 1.0) / (m + 1.0)))
}

pub fn asa_limit_study(body: &ConvexBody, delta_grid: &[f64], samples: u64, seed: u64, opts: &AsaStudyOptions) -> Result<ConvergenceReport> {
    validate_grid(delta_grid, MIN_DELTA)?;
    let n = body.dim();
    let constant = c_n_constant(n, opts.convention)?;
    let power = 2.0 / (n as f64 + 1.0);
    let exact_available = ellipsoidal_reduction(body).is_some();
    let use_exact = match opts.path {
        WetPath::Auto => exact_available,
        WetPath::Exact if !exact_available => {
            return Err(Error::Unsupported(format!("no exact wet-volume path for {}", body.tag())));
        }
        WetPath::Exact => true,
        WetPath::MonteCarlo => false,
    };
    let volume: Vec<McEstimate> = if use_exact {
        delta_grid.iter().map(|&d| wet_volume_exact(body, d).map(McEstimate::exact)).collect::<Result<_>>()?
    } else {
        wet_volumes(body, delta_grid, samples, seed)?
    };
    ConvergenceReport::from_volumes(
        delta_grid,
        volume,
        power,
        constant,
        opts.convention.label(),
        opts.fit_exponent.unwrap_or(power),
        exact_affine_surface_area(body),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(hi: i32, lo: i32) -> Vec<f64> {
        (hi..=lo).map(|k| 10f64.powi(-k)).collect()
    }

    #[test]
    fn exact_ball_and_disk_limits() {
        let g = grid(2, 6);
        let b = ConvexBody::ball(3, 1.0).unwrap();
        let r = asa_limit_study(&b, &g, 1, 0, &AsaStudyOptions::default()).unwrap();
        assert!(r.relative_gap().unwrap().abs() < 5e-3, "{r:?}");
        assert!((r.reference.unwrap() - 4.0 * PI).abs() < 1e-12);
        let d = ConvexBody::ball(2, 1.0).unwrap();
        let r = asa_limit_study(&d, &g, 1, 0, &AsaStudyOptions::default()).unwrap();
        assert!((r.fitted_limit - 2.0 * PI).abs() < 5e-3 * 2.0 * PI);
    }

    #[test]
    fn rejects_bad_grids() {
        let d = ConvexBody::ball(2, 1.0).unwrap();
        let opts = AsaStudyOptions::default();
        assert!(asa_limit_study(&d, &[1e-3, 1e-2], 1, 0, &opts).is_err());
        assert!(asa_limit_study(&d, &[1e-3, 1e-9], 1, 0, &opts).is_err());
        let sq = ConvexBody::cube(2, 1.0).unwrap();
        let exact = AsaStudyOptions { path: WetPath::Exact, ..opts };
        assert!(asa_limit_study(&sq, &[1e-2, 1e-3], 1, 0, &exact).is_err());
    }
}
