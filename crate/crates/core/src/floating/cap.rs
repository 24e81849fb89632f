//! Volumes of caps `K ∩ {u·y >= t}`.

use serde::{Deserialize, Serialize};

use crate::convex::body::{norm, ConvexBody, Shape};
use crate::error::{invalid, Error, Result};
use crate::numerics::mc::{mc_volume, McEstimate};
use crate::numerics::quadrature::{gauss_legendre, integrate};
use crate::numerics::roots::find_root;
use crate::numerics::special::ball_cap_volume;

/// The half-space `{y : u·y >= t}` with `|u| = 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapSpec {
    pub direction: Vec<f64>,
    pub offset: f64,
}

impl CapSpec {
    pub fn new(direction: Vec<f64>, offset: f64) -> Result<Self> {
        let nu = norm(&direction);
        if (nu - 1.0).abs() > 1e-12 {
            return invalid(format!("cap direction must be a unit vector (|u| = {nu})"));
        }
        if !offset.is_finite() {
            return invalid("cap offset must be finite");
        }
        Ok(CapSpec { direction, offset })
    }

    /// Cap whose boundary hyperplane passes through `x`.
    pub fn through(direction: Vec<f64>, x: &[f64]) -> Result<Self> {
        let t = direction.iter().zip(x).map(|(a, b)| a * b).sum();
        CapSpec::new(direction, t)
    }
}

/// Volume of `K ∩ {u·y >= t}`. Closed forms for balls, ellipsoids, cubes and
/// their affine images; section quadrature for superellipsoids with n <= 3.
pub fn cap_volume(body: &ConvexBody, cap: &CapSpec) -> Result<f64> {
    if cap.direction.len() != body.dim() {
        return invalid("cap direction dimension mismatch");
    }
    Ok(cap_volume_unchecked(body, &cap.direction, cap.offset)?.max(0.0))
}

/// `cap_volume` for a unit direction without validation.
pub(crate) fn cap_volume_unchecked(body: &ConvexBody, u: &[f64], t: f64) -> Result<f64> {
    match body.shape() {
        Shape::Ball { radius } => Ok(radius.powi(body.dim() as i32) * ball_cap_volume(body.dim(), t / radius)),
        Shape::Ellipsoid { axes } => {
            // y = D z: u·y >= t  <=>  (D u / |D u|)·z >= t / |D u|
            let du = u.iter().zip(axes).map(|(v, a)| (v * a) * (v * a)).sum::<f64>().sqrt();
            let det: f64 = axes.iter().product();
            Ok(det * ball_cap_volume(body.dim(), t / du))
        }
        Shape::Cube { side } => Ok(cube_cap(body.dim(), *side, u, t)),
        Shape::Superellipsoid { .. } => section_quadrature(body, u, t),
        Shape::Affine { base, matrix, shift, det, .. } => {
            // y = A z + b: u·y >= t  <=>  (Aᵀu)·z >= t - u·b
            let w = matrix.tr_mul_vec(u);
            let nw = norm(&w);
            let dir: Vec<f64> = w.iter().map(|v| v / nw).collect();
            let ub: f64 = u.iter().zip(shift).map(|(a, b)| a * b).sum();
            Ok(det.abs() * cap_volume_unchecked(base, &dir, (t - ub) / nw)?)
        }
    }
}

/// Monte Carlo fallback for any body.
pub fn cap_volume_mc(body: &ConvexBody, cap: &CapSpec, samples: u64, seed: u64) -> Result<McEstimate> {
    let u = &cap.direction;
    let t = cap.offset;
    mc_volume(
        |y| u.iter().zip(y).map(|(a, b)| a * b).sum::<f64>() >= t && body.contains(y),
        &body.bounding_box(),
        samples,
        seed,
    )
}

/// Cap of the cube `[-L/2, L/2]^n`.
fn cube_cap(n: usize, side: f64, u: &[f64], t: f64) -> f64 {
    // y = L (x - 1/2), then x_i -> 1 - x_i on negative components:
    // u·y >= t  <=>  a·x >= tau  with a_i = L |u_i| >= 0.
    let a: Vec<f64> = u.iter().map(|v| side * v.abs()).collect();
    let sum_a: f64 = a.iter().sum();
    let tau = t + 0.5 * sum_a;
    let vol = side.powi(n as i32);
    if tau <= 0.0 {
        return vol;
    }
    if tau >= sum_a {
        return 0.0;
    }
    // vol{a·x >= tau} = vol{a·x <= sum_a - tau}; evaluate on the smaller side.
    let sigma = sum_a - tau;
    if sigma <= 0.5 * sum_a {
        vol * simplex_slab(&a, sigma)
    } else {
        vol * (1.0 - simplex_slab(&a, tau))
    }
}

/// `vol{x in [0,1]^m : a·x <= sigma}` for `a >= 0`.
fn simplex_slab(a: &[f64], sigma: f64) -> f64 {
    let scale = a.iter().cloned().fold(0.0, f64::max);
    let mut nz: Vec<f64> = a.iter().cloned().filter(|v| *v > 1e-13 * scale).collect();
    nz.sort_by(|x, y| y.total_cmp(x));
    match nz.len() {
        0 => 1.0,
        1 => (sigma / nz[0]).clamp(0.0, 1.0),
        2 => {
            let (a1, a2) = (nz[0], nz[1]);
            if sigma <= 0.0 {
                0.0
            } else if sigma <= a2 {
                sigma * sigma / (2.0 * a1 * a2)
            } else if sigma <= a1 {
                (sigma - 0.5 * a2) / a1
            } else if sigma < a1 + a2 {
                let r = a1 + a2 - sigma;
                1.0 - r * r / (2.0 * a1 * a2)
            } else {
                1.0
            }
        }
        m => {
            // inclusion–exclusion over the vertices of the cube
            let mut fact = 1.0;
            for k in 2..=m {
                fact *= k as f64;
            }
            let prod: f64 = nz.iter().product();
            let mut total = 0.0;
            for mask in 0u32..(1 << m) {
                let shift: f64 = (0..m).filter(|i| mask & (1 << i) != 0).map(|i| nz[i]).sum();
                let r = sigma - shift;
                if r > 0.0 {
                    let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                    total += sign * r.powi(m as i32);
                }
            }
            (total / (fact * prod)).clamp(0.0, 1.0)
        }
    }
}

/// `∫_t^{h(u)} A(s) ds` with `A(s)` the (n-1)-volume of the section `{u·y = s}`.
fn section_quadrature(body: &ConvexBody, u: &[f64], t: f64) -> Result<f64> {
    let n = body.dim();
    if n > 3 {
        return Err(Error::Unsupported("section quadrature is implemented for n <= 3; use cap_volume_mc".into()));
    }
    let neg: Vec<f64> = u.iter().map(|v| -v).collect();
    let h_hi = body.support(u);
    let h_lo = -body.support(&neg);
    if t >= h_hi {
        return Ok(0.0);
    }
    let full = body.volume().ok_or_else(|| Error::Unsupported("body volume unknown".into()))?;
    if t <= h_lo {
        return Ok(full);
    }
    if n == 1 {
        return Ok(h_hi - t);
    }
    let x_hi = body.support_point(u);
    let x_lo = body.support_point(&neg);
    let basis = orthonormal_complement(u);
    let reach = 2.0 * norm(&body.bounding_box().hi).max(norm(&body.bounding_box().lo)) + 1.0;
    let radial_in_plane = |c: &[f64], e: &[f64]| -> f64 {
        let f = |r: f64| {
            let y: Vec<f64> = c.iter().zip(e).map(|(a, b)| a + r * b).collect();
            body.implicit(&y)
        };
        if f(0.0) >= 0.0 {
            return 0.0;
        }
        find_root(f, 0.0, reach, 1e-15 * reach).unwrap_or(0.0)
    };
    let section = |s: f64| -> f64 {
        let lam = ((s - h_lo) / (h_hi - h_lo)).clamp(0.0, 1.0);
        let c: Vec<f64> = x_lo.iter().zip(&x_hi).map(|(a, b)| a + lam * (b - a)).collect();
        if n == 2 {
            let e = &basis[0];
            let me: Vec<f64> = e.iter().map(|v| -v).collect();
            radial_in_plane(&c, e) + radial_in_plane(&c, &me)
        } else {
            // area = ½ ∮ r(θ)² dθ, periodic trapezoid rule
            let m = 96;
            let mut acc = 0.0;
            for k in 0..m {
                let th = std::f64::consts::TAU * k as f64 / m as f64;
                let e: Vec<f64> = basis[0].iter().zip(&basis[1]).map(|(a, b)| th.cos() * a + th.sin() * b).collect();
                let r = radial_in_plane(&c, &e);
                acc += r * r;
            }
            0.5 * acc * std::f64::consts::TAU / m as f64
        }
    };
    // s = t + (h_hi - t)(1 - cos πv)/2 clusters nodes at both ends
    let rule = gauss_legendre(24);
    let width = h_hi - t;
    let v = integrate(
        |v| {
            let s = t + 0.5 * width * (1.0 - (std::f64::consts::PI * v).cos());
            section(s) * 0.5 * width * std::f64::consts::PI * (std::f64::consts::PI * v).sin()
        },
        0.0,
        1.0,
        4,
        &rule,
    );
    Ok(v.min(full))
}

/// Orthonormal basis of `u^⊥`.
pub(crate) fn orthonormal_complement(u: &[f64]) -> Vec<Vec<f64>> {
    let n = u.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n - 1);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| u[i].abs().total_cmp(&u[j].abs()));
    for &k in &order {
        if basis.len() == n - 1 {
            break;
        }
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        for _ in 0..2 {
            for b in std::iter::once(u).chain(basis.iter().map(|v| v.as_slice())) {
                let d: f64 = e.iter().zip(b).map(|(x, y)| x * y).sum();
                e.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
        }
        let ne = norm(&e);
        if ne > 1e-8 {
            basis.push(e.iter().map(|v| v / ne).collect());
        }
    }
    basis
}
