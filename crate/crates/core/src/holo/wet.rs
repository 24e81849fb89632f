//! Volume of the holomorphic wet region
//! `{z ∈ Ω : |h_p(z)| < η_p(δ) for some peak p}`.
//!
//! Every wet point lies within the collar width of the boundary, so samples
//! are drawn from the radial shell `s ∈ [s0, 1]` of the star parametrization
//! `z = c + s·r(u)·u` instead of the whole domain.

use serde::{Deserialize, Serialize};

use super::family::{FamilyKind, PeakFamily};
use super::peak::levi_polynomial;
use crate::cr::jet::{to_complex, to_real};
use crate::cr::Domain;
use crate::error::{invalid, Error, Result};
use crate::floating::cap::orthonormal_complement;
use crate::numerics::linalg::C64;
use crate::numerics::mc::{mc_mean_stream, McEstimate};
use crate::numerics::optimize::{nelder_mead, NelderMeadOptions};
use crate::numerics::special::unit_ball_volume;

/// High bit separating wet-volume streams from quantile streams.
const WET_STREAM: u64 = 1 << 62;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WetMode {
    /// Peaks at every boundary point: `z` is wet when the peak minimizing
    /// `|h_p(z)|` falls below the threshold of the nearest family member.
    #[default]
    Continuous,
    /// Only the family's own peaks.
    Finite,
}

/// Peak minimizing `|h_p(z)|` over boundary points `p`.
#[derive(Debug, Clone, Copy)]
enum Locator {
    /// `p = R z/|z|`, `|h_p(z)| = R − |z|`.
    Ball { radius: f64 },
    /// `p = a e_j` with `|z_j|` maximal, `|h_p(z)| = 1 − |z_j|`.
    Polydisk,
    Search,
}

impl Locator {
    fn for_domain(domain: &Domain) -> Self {
        match domain {
            Domain::Ball { radius, .. } => Locator::Ball { radius: *radius },
            Domain::Polydisk { .. } => Locator::Polydisk,
            _ => Locator::Search,
        }
    }
}

/// `(min_p |h_p(z)|, argmin p)`.
fn closest_peak(domain: &Domain, family: &PeakFamily, locator: Locator, z: &[C64]) -> (f64, Vec<C64>) {
    match locator {
        Locator::Ball { radius } => {
            let nz = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
            let mut p = vec![C64::new(0.0, 0.0); z.len()];
            if nz == 0.0 {
                p[0] = C64::new(radius, 0.0);
            } else {
                for (pj, zj) in p.iter_mut().zip(z) {
                    *pj = zj * (radius / nz);
                }
            }
            (radius - nz, p)
        }
        Locator::Polydisk => {
            let (j, m) = z.iter().enumerate().map(|(j, w)| (j, w.norm())).fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
            let mut p = vec![C64::new(0.0, 0.0); z.len()];
            p[j] = if m > 0.0 { z[j] / m } else { C64::new(1.0, 0.0) };
            (1.0 - m, p)
        }
        Locator::Search => search_peak(domain, family, z),
    }
}

fn search_peak(domain: &Domain, family: &PeakFamily, z: &[C64]) -> (f64, Vec<C64>) {
    let k = family.nearest(z);
    let start = &family.peaks[k];
    let mut best = (start.eval(z).norm(), start.base.clone());
    let center = to_real(&domain.center());
    let mut u0: Vec<f64> = to_real(&start.base).iter().zip(&center).map(|(a, b)| a - b).collect();
    let nu = u0.iter().map(|v| v * v).sum::<f64>().sqrt();
    u0.iter_mut().for_each(|v| *v /= nu);
    let chart = orthonormal_complement(&u0);
    let point = |t: &[f64]| -> Option<Vec<C64>> {
        let mut u = u0.clone();
        for (ti, e) in t.iter().zip(&chart) {
            for (ui, ei) in u.iter_mut().zip(e) {
                *ui += ti * ei;
            }
        }
        let nu = u.iter().map(|v| v * v).sum::<f64>().sqrt();
        u.iter_mut().for_each(|v| *v /= nu);
        domain.boundary_point(&u).ok()
    };
    let value = |t: &[f64]| -> f64 {
        point(t)
            .and_then(|p| levi_polynomial(domain, &p).ok())
            .map(|h| h.eval(z).norm())
            .unwrap_or(f64::INFINITY)
    };
    let opts = NelderMeadOptions { step: 0.05, f_tol: 1e-14, x_tol: 1e-9, max_evals: 400 };
    let m = nelder_mead(value, &vec![0.0; chart.len()], opts);
    if m.value < best.0 {
        if let Some(p) = point(&m.x) {
            best = (m.value, p);
        }
    }
    best
}

fn is_wet(domain: &Domain, family: &PeakFamily, eta: &[f64], mode: WetMode, locator: Locator, reach: f64, z: &[C64]) -> bool {
    match mode {
        WetMode::Continuous => {
            let (value, p) = closest_peak(domain, family, locator, z);
            value < eta[family.nearest(&p)]
        }
        WetMode::Finite => {
            let mut wet = false;
            if reach.is_finite() {
                family.for_each_within(z, reach, &mut |k| {
                    wet = family.peaks[k].eval(z).norm() < eta[k];
                    !wet
                });
            } else {
                wet = family.peaks.iter().zip(eta).any(|(h, e)| h.eval(z).norm() < *e);
            }
            wet
        }
    }
}

/// Width of a boundary collar containing every wet point at thresholds `eta`.
pub fn collar_width(family: &PeakFamily, eta: &[f64]) -> f64 {
    match family.kind {
        FamilyKind::Polydisk { .. } => eta.iter().cloned().fold(0.0, f64::max),
        FamilyKind::Levi => {
            let eta_max = eta.iter().cloned().fold(0.0, f64::max);
            let q = family.max_quad_norm();
            let c = family.min_containment();
            if q == 0.0 {
                eta_max
            } else if c > 0.0 {
                eta_max * (1.0 + q / c)
            } else {
                f64::INFINITY
            }
        }
    }
}

/// Wet volume at `δ` in the default (continuous) mode.
pub fn holo_wet_volume(domain: &Domain, family: &PeakFamily, delta: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    holo_wet_volume_with(domain, family, delta, samples, seed, 0, WetMode::default())
}

/// Wet volume at `δ` on sub-stream `stream` of `seed`.
pub fn holo_wet_volume_with(
    domain: &Domain,
    family: &PeakFamily,
    delta: f64,
    samples: u64,
    seed: u64,
    stream: u64,
    mode: WetMode,
) -> Result<McEstimate> {
    if !domain.is_bounded() {
        return Err(Error::Unsupported("wet volume needs a bounded domain".into()));
    }
    if family.is_empty() || family.peaks[0].dim() != domain.n() {
        return invalid("peak family does not match the domain");
    }
    let eta = family.eta_all(delta)?;
    let n = domain.n();
    let dim = 2 * n;
    let width = collar_width(family, &eta);
    let s0 = (1.0 - width / domain.inradius()?).max(0.0);
    let s0p = s0.powi(dim as i32);
    let shell = unit_ball_volume(dim) * (1.0 - s0p);
    let center = domain.center();
    let locator = Locator::for_domain(domain);
    let c = family.min_containment();
    let eta_max = eta.iter().cloned().fold(0.0, f64::max);
    let reach = if c > 0.0 { (eta_max / c).sqrt() } else { f64::INFINITY };
    let est = mc_mean_stream(samples, seed, WET_STREAM | stream, |rng, _| {
        let mut buf = [0.0; 16];
        let u = &mut buf[..dim];
        rng.unit_vector(u);
        let r = match domain.radial(u) {
            Ok(r) => r,
            Err(_) => return f64::NAN,
        };
        let s = (s0p + rng.uniform() * (1.0 - s0p)).powf(1.0 / dim as f64);
        let w = to_complex(u);
        let z: Vec<C64> = center.iter().zip(&w).map(|(c, d)| c + d * (s * r)).collect();
        if is_wet(domain, family, &eta, mode, locator, reach, &z) {
            shell * r.powi(dim as i32)
        } else {
            0.0
        }
    })?;
    if !est.value.is_finite() {
        return Err(Error::Numerical("radial parametrization failed during wet sampling".into()));
    }
    Ok(est)
}
