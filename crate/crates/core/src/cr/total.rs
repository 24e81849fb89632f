//! Boundary totals of the Fefferman measure and the transformation-law and
//! tube checks built on them.

use serde::{Deserialize, Serialize};

use super::density::{density_from_jet, fefferman_density, BOUNDARY_TOL};
use super::domain::Domain;
use crate::convex::{gauss_curvature, ConvexBody};
use crate::error::{invalid, Error, Result};
use crate::numerics::linalg::{CMatrix, C64};
use crate::numerics::mc::{mc_mean, McEstimate};
use crate::numerics::special::unit_sphere_area;

fn check_total_domain(domain: &Domain) -> Result<()> {
    if domain.is_polydisk() {
        return Err(Error::Unsupported("density undefined for polydisk".into()));
    }
    if !domain.is_bounded() {
        return Err(Error::Unsupported("boundary total of an unbounded tube diverges".into()));
    }
    Ok(())
}

/// Radial integrand `|S^{2n−1}| · density · r^{2n−1} / (u·ν)` at the real unit direction `u`.
pub fn radial_density_weight(domain: &Domain, u: &[f64]) -> Result<f64> {
    let n = domain.n();
    let r = domain.radial(u)?;
    let p = domain.boundary_point(u)?;
    let jet = domain.jet(&p)?;
    let density = density_from_jet(&jet)?;
    // outward normal is −∇ρ/|∇ρ|
    let grad = jet.real_gradient();
    let gn = jet.real_gradient_norm();
    let cos = -grad.iter().zip(u).map(|(a, b)| a * b).sum::<f64>() / gn;
    Ok(unit_sphere_area(2 * n) * density * r.powi(2 * n as i32 - 1) / cos)
}

/// Monte Carlo estimate of `∫_{bΩ} σ` from `samples` uniform directions.
pub fn fefferman_total(domain: &Domain, samples: u64, seed: u64) -> Result<McEstimate> {
    check_total_domain(domain)?;
    let n = domain.n();
    // surface the first failure before the parallel pass
    let mut probe = vec![0.0; 2 * n];
    probe[0] = 1.0;
    radial_density_weight(domain, &probe)?;
    let est = mc_mean(samples, seed, |rng, _| {
        let mut u = vec![0.0; 2 * n];
        rng.unit_vector(&mut u);
        radial_density_weight(domain, &u).unwrap_or(f64::NAN)
    })?;
    if !est.value.is_finite() {
        return Err(Error::Numerical("non-finite Fefferman density on sampled boundary points".into()));
    }
    Ok(est)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransformCheck {
    pub base: McEstimate,
    pub image: McEstimate,
    pub ratio: f64,
    pub ratio_std_error: f64,
    /// `|det G|^{2n/(n+1)}`
    pub expected: f64,
}

impl TransformCheck {
    pub fn relative_gap(&self) -> f64 {
        (self.ratio - self.expected) / self.expected
    }
}

pub fn transformation_check(domain: &Domain, g: &CMatrix, samples: u64, seed: u64) -> Result<TransformCheck> {
    let image_domain = domain.linear_image(g)?;
    let base = fefferman_total(domain, samples, seed)?;
    let image = fefferman_total(&image_domain, samples, seed ^ 0x9e37_79b9)?;
    let n = domain.n() as f64;
    let ratio = image.value / base.value;
    let ratio_std_error = ratio * (image.rel_error().powi(2) + base.rel_error().powi(2)).sqrt();
    Ok(TransformCheck { base, image, ratio, ratio_std_error, expected: g.det().norm().powf(2.0 * n / (n + 1.0)) })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TubeCheck {
    /// Density at `x + i y`.
    pub density: f64,
    /// Density at `x + i y'` for a second imaginary part.
    pub density_shifted: f64,
    /// `κ(x)^{1/(n+1)}`
    pub reference: f64,
}

impl TubeCheck {
    pub fn ratio(&self) -> f64 {
        self.density / self.reference
    }
}

/// Density of the tube over `profile` at `x + i y` against `κ(x)^{1/(n+1)}`.
pub fn tube_density_check(profile: &ConvexBody, x: &[f64], y: &[f64], y_shifted: &[f64]) -> Result<TubeCheck> {
    let n = profile.dim();
    if x.len() != n || y.len() != n || y_shifted.len() != n {
        return invalid("tube point dimension mismatch");
    }
    let f = profile.implicit(x);
    if f.abs() > BOUNDARY_TOL {
        return Err(Error::NotOnBoundary { residual: f.abs() });
    }
    let tube = Domain::tube(profile.clone())?;
    let z = |im: &[f64]| -> Vec<C64> { x.iter().zip(im).map(|(a, b)| C64::new(*a, *b)).collect() };
    let density = fefferman_density(&tube, &z(y))?;
    let density_shifted = fefferman_density(&tube, &z(y_shifted))?;
    let kappa = gauss_curvature(profile, x)?.kappa;
    Ok(TubeCheck { density, density_shifted, reference: kappa.powf(1.0 / (n as f64 + 1.0)) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_density_totals_are_exact() {
        let circle = fefferman_total(&Domain::ball(1, 1.0).unwrap(), 1000, 1).unwrap();
        assert!((circle.value - 2.0 * PI).abs() < 1e-12 && circle.std_error == 0.0);
        let s3 = fefferman_total(&Domain::ball(2, 1.0).unwrap(), 1000, 1).unwrap();
        assert!((s3.value - 2f64.powf(4.0 / 3.0) * PI * PI).abs() < 1e-11);
        let s5 = fefferman_total(&Domain::ball(3, 1.0).unwrap(), 1000, 1).unwrap();
        assert!((s5.value - 2f64.sqrt() * PI.powi(3)).abs() < 1e-10);
    }

    #[test]
    fn totals_reject_polydisk_and_tubes() {
        assert!(matches!(fefferman_total(&Domain::polydisk(2).unwrap(), 10, 1), Err(Error::Unsupported(_))));
        let t = Domain::tube(ConvexBody::ball(2, 1.0).unwrap()).unwrap();
        assert!(fefferman_total(&t, 10, 1).is_err());
    }

    #[test]
    fn perturbed_ball_total_is_close_to_the_ball() {
        let e = fefferman_total(&Domain::perturbed_ball(2, 0.05).unwrap(), 100_000, 4).unwrap();
        let ball = 2f64.powf(4.0 / 3.0) * PI * PI;
        assert!((e.value - ball).abs() / ball < 0.02, "{e:?}");
    }

    #[test]
    fn unitary_maps_preserve_totals() {
        let u = crate::numerics::linalg::unitary_completion(&[C64::new(0.3, 0.4), C64::new(-0.5, 0.2)]).scale(C64::from_polar(1.0, 0.7));
        let e = Domain::complex_ellipsoid(&[1.0, 2.0]).unwrap();
        let chk = transformation_check(&e, &u, 200_000, 8).unwrap();
        assert!((chk.expected - 1.0).abs() < 1e-12);
        assert!(chk.relative_gap().abs() < 4.0 * chk.ratio_std_error, "{chk:?}");
    }

    #[test]
    fn tube_over_circle() {
        let c = ConvexBody::ball(2, 1.0).unwrap();
        let t = tube_density_check(&c, &[0.6, 0.8], &[0.0, 0.0], &[3.0, -1.0]).unwrap();
        assert!((t.reference - 1.0).abs() < 1e-14);
        assert!((t.ratio() - 1.0).abs() < 1e-12);
        assert_eq!(t.density, t.density_shifted);
        assert!(tube_density_check(&c, &[0.5, 0.5], &[0.0; 2], &[0.0; 2]).is_err());
    }
}
