//! Gaussian curvature of a level-set boundary.

use super::body::{norm, ConvexBody};
use crate::error::{Error, Result};
use crate::numerics::linalg::RMatrix;

/// Boundary residual accepted as "on the boundary".
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct CurvatureJet {
    pub point: Vec<f64>,
    /// Unit outward normal.
    pub normal: Vec<f64>,
    pub kappa: f64,
}

/// Gaussian curvature from the bordered Hessian:
/// `κ = -det [[Hess F, ∇F], [∇Fᵀ, 0]] / |∇F|^{n+1}`.
pub fn gauss_curvature(body: &ConvexBody, x: &[f64]) -> Result<CurvatureJet> {
    let jet = body.jet(x)?;
    if jet.value.abs() > BOUNDARY_TOL {
        return Err(Error::NotOnBoundary { residual: jet.value.abs() });
    }
    let kappa = bordered_curvature(&jet.grad, &jet.hess)?;
    let g = norm(&jet.grad);
    Ok(CurvatureJet { point: x.to_vec(), normal: jet.grad.iter().map(|v| v / g).collect(), kappa })
}

pub(crate) fn bordered_curvature(grad: &[f64], hess: &RMatrix) -> Result<f64> {
    let n = grad.len();
    let g = norm(grad);
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::Degenerate("vanishing gradient of the implicit function".into()));
    }
    let mut b = RMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            b[(i, j)] = hess[(i, j)];
        }
        b[(i, n)] = grad[i];
        b[(n, i)] = grad[i];
    }
    Ok(-b.det() / g.powi(n as i32 + 1))
}

/// Central finite-difference gradient and Hessian of the implicit function.
/// Cross-check only; the main path uses the exact jets.
pub fn finite_difference_jet(body: &ConvexBody, x: &[f64], h: f64) -> (Vec<f64>, RMatrix) {
    let n = x.len();
    let f = |y: &[f64]| body.implicit(y);
    let mut grad = vec![0.0; n];
    let mut hess = RMatrix::zeros(n, n);
    let mut y = x.to_vec();
    let f0 = f(x);
    for i in 0..n {
        y[i] = x[i] + h;
        let fp = f(&y);
        y[i] = x[i] - h;
        let fm = f(&y);
        y[i] = x[i];
        grad[i] = (fp - fm) / (2.0 * h);
        hess[(i, i)] = (fp - 2.0 * f0 + fm) / (h * h);
        for j in 0..i {
            let mut s = 0.0;
            for (si, sj, w) in [(1.0, 1.0, 1.0), (1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0)] {
                y[i] = x[i] + si * h;
                y[j] = x[j] + sj * h;
                s += w * f(&y);
            }
            y[i] = x[i];
            y[j] = x[j];
            hess[(i, j)] = s / (4.0 * h * h);
            hess[(j, i)] = hess[(i, j)];
        }
    }
    (grad, hess)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rng::SampleRng;

    fn on_boundary(body: &ConvexBody, u: &[f64]) -> Vec<f64> {
        let r = body.radial(u);
        body.center().iter().zip(u).map(|(c, v)| c + r * v).collect()
    }

    #[test]
    fn spheres_and_ellipse_vertex() {
        let s = ConvexBody::ball(3, 1.0).unwrap();
        let k = gauss_curvature(&s, &[0.0, 0.6, 0.8]).unwrap();
        assert!((k.kappa - 1.0).abs() < 1e-12);
        assert!((norm(&k.normal) - 1.0).abs() < 1e-12);
        let r = ConvexBody::ball(3, 2.5).unwrap();
        assert!((gauss_curvature(&r, &[0.0, 0.0, 2.5]).unwrap().kappa - 1.0 / 6.25).abs() < 1e-12);
        let e = ConvexBody::ellipsoid(&[2.0, 1.0]).unwrap();
        assert!((gauss_curvature(&e, &[2.0, 0.0]).unwrap().kappa - 2.0).abs() < 1e-12);
        assert!((gauss_curvature(&e, &[0.0, 1.0]).unwrap().kappa - 0.25).abs() < 1e-12);
    }

    #[test]
    fn off_boundary_rejected() {
        let s = ConvexBody::ball(2, 1.0).unwrap();
        match gauss_curvature(&s, &[0.5, 0.0]) {
            Err(Error::NotOnBoundary { residual }) => assert!((residual - 0.75).abs() < 1e-15),
            other => panic!("{other:?}"),
        }
        let c = ConvexBody::cube(2, 1.0).unwrap();
        assert!(gauss_curvature(&c, &[0.5, 0.0]).is_err());
    }

    #[test]
    fn ellipse_curvature_matches_turning_angle() {
        // κ = dθ/ds along the parametrization (a cos t, b sin t)
        let (a, b) = (2.0, 1.0);
        let e = ConvexBody::ellipsoid(&[a, b]).unwrap();
        for k in 0..20 {
            let t = 0.3 * k as f64;
            let h = 1e-5;
            let angle = |t: f64| (b * t.cos()).atan2(-a * t.sin());
            let speed = ((a * t.sin()).powi(2) + (b * t.cos()).powi(2)).sqrt();
            let mut dtheta = angle(t + h) - angle(t - h);
            if dtheta.abs() > 1.0 {
                dtheta -= dtheta.signum() * std::f64::consts::TAU;
            }
            let fd = (dtheta / (2.0 * h)).abs() / speed;
            let exact = gauss_curvature(&e, &[a * t.cos(), b * t.sin()]).unwrap().kappa;
            assert!((fd - exact).abs() < 1e-6 * exact, "t={t}: {fd} vs {exact}");
        }
    }

    #[test]
    fn curvature_matches_normal_map_jacobian() {
        // det of the differential of x -> ∇F/|∇F| restricted to the tangent space
        let e = ConvexBody::ellipsoid(&[2.0, 1.0, 0.7]).unwrap();
        let normal = |y: &[f64]| {
            let g = e.jet(y).unwrap().grad;
            let ng = norm(&g);
            g.into_iter().map(|v| v / ng).collect::<Vec<_>>()
        };
        for i in 0..30 {
            let mut rng = SampleRng::new(3, 0, i);
            let mut u = vec![0.0; 3];
            rng.unit_vector(&mut u);
            let p = on_boundary(&e, &u);
            let nu = normal(&p);
            // orthonormal tangent basis
            let seed = if nu[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let d: f64 = seed.iter().zip(&nu).map(|(a, b)| a * b).sum();
            let mut t1: Vec<f64> = seed.iter().zip(&nu).map(|(a, b)| a - d * b).collect();
            let n1 = norm(&t1);
            t1.iter_mut().for_each(|v| *v /= n1);
            let t2 = vec![nu[1] * t1[2] - nu[2] * t1[1], nu[2] * t1[0] - nu[0] * t1[2], nu[0] * t1[1] - nu[1] * t1[0]];
            let h = 1e-6;
            let dn = |t: &[f64]| {
                let xp: Vec<f64> = p.iter().zip(t).map(|(a, b)| a + h * b).collect();
                let xm: Vec<f64> = p.iter().zip(t).map(|(a, b)| a - h * b).collect();
                let (np, nm) = (normal(&xp), normal(&xm));
                np.iter().zip(&nm).map(|(a, b)| (a - b) / (2.0 * h)).collect::<Vec<_>>()
            };
            let (d1, d2) = (dn(&t1), dn(&t2));
            let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
            let shape = dot(&d1, &t1) * dot(&d2, &t2) - dot(&d1, &t2) * dot(&d2, &t1);
            let exact = gauss_curvature(&e, &p).unwrap().kappa;
            assert!(exact > 0.0);
            assert!((shape - exact).abs() < 1e-4 * exact, "{shape} vs {exact}");
        }
    }

    #[test]
    fn finite_difference_adapter_agrees() {
        let s = ConvexBody::superellipsoid(4.0, &[1.0, 1.5]).unwrap();
        let u = [0.6, 0.8];
        let p = on_boundary(&s, &u);
        let (g, h) = finite_difference_jet(&s, &p, 1e-4);
        let k_fd = bordered_curvature(&g, &h).unwrap();
        let k = gauss_curvature(&s, &p).unwrap().kappa;
        assert!((k_fd - k).abs() < 1e-4 * k);
    }
}
