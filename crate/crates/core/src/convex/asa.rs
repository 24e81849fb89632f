//! Affine surface area `∫_{bK} κ^{1/(n+1)} ds` by radial boundary sampling.
//!
//! With `p(u) = c + r(u) u` the surface element is
//! `ds = r^{n-1} / (u·ν) dσ(u)`, `ν` the outward unit normal at `p(u)`.

use super::body::ConvexBody;
use super::curvature::bordered_curvature;
use crate::error::{Error, Result};
use crate::numerics::mc::{mc_mean, McEstimate};
use crate::numerics::special::unit_sphere_area;

/// Integrand of the radial boundary parametrization at the unit direction `u`,
/// including the area of the parameter sphere.
pub fn radial_boundary_weight(body: &ConvexBody, u: &[f64], power: f64) -> Result<f64> {
    let n = body.dim();
    let r = body.radial(u);
    let c = body.center();
    let p: Vec<f64> = c.iter().zip(u).map(|(a, b)| a + r * b).collect();
    let jet = body.jet(&p)?;
    let g = super::body::norm(&jet.grad);
    let cos: f64 = jet.grad.iter().zip(u).map(|(a, b)| a * b).sum::<f64>() / g;
    let kappa = if power == 0.0 { 1.0 } else { bordered_curvature(&jet.grad, &jet.hess)?.max(0.0).powf(power) };
    Ok(unit_sphere_area(n) * kappa * r.powi(n as i32 - 1) / cos)
}

/// Monte Carlo estimate of the affine surface area from `samples` uniform
/// directions.
pub fn affine_surface_area(body: &ConvexBody, samples: u64, seed: u64) -> Result<McEstimate> {
    boundary_integral(body, 1.0 / (body.dim() as f64 + 1.0), samples, seed)
}

/// Surface area (curvature power 0), used as a cross-check.
pub fn surface_area(body: &ConvexBody, samples: u64, seed: u64) -> Result<McEstimate> {
    boundary_integral(body, 0.0, samples, seed)
}

fn boundary_integral(body: &ConvexBody, power: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    if !body.is_smooth() {
        return Err(Error::Unsupported("curvature is undefined on the faces and edges of a cube".into()));
    }
    let n = body.dim();
    if n < 2 {
        return Err(Error::InvalidInput("boundary integrals need dimension at least 2".into()));
    }
    body.jet(&body.center())?;
    mc_mean(samples, seed, |rng, _| {
        let mut u = vec![0.0; n];
        rng.unit_vector(&mut u);
        radial_boundary_weight(body, &u, power).unwrap_or(f64::NAN)
    })
    .and_then(|e| {
        if e.value.is_finite() {
            Ok(e)
        } else {
            Err(Error::Numerical("non-finite boundary integrand".into()))
        }
    })
}
