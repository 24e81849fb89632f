//! Catalog convex bodies in R^n.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numerics::linalg::RMatrix;
use crate::numerics::mc::Aabb;
use crate::numerics::special::{gamma_fn, unit_ball_volume};

/// Value, gradient and Hessian of an implicit function `F` with `F < 0`
/// inside the body.
#[derive(Debug, Clone)]
pub struct ImplicitJet {
    pub value: f64,
    pub grad: Vec<f64>,
    pub hess: RMatrix,
}

#[derive(Debug, Clone)]
pub enum Shape {
    Ball { radius: f64 },
    /// `Σ (x_i / a_i)^2 <= 1`
    Ellipsoid { axes: Vec<f64> },
    /// `Σ |x_i / s_i|^p <= 1`, `p >= 2`
    Superellipsoid { exponent: f64, scales: Vec<f64> },
    /// `[-side/2, side/2]^n`
    Cube { side: f64 },
    /// `{A y + b : y in base}`
    Affine {
        base: Box<ConvexBody>,
        matrix: RMatrix,
        inverse: RMatrix,
        shift: Vec<f64>,
        det: f64,
        /// Smallest singular value of `matrix`.
        sigma_min: f64,
    },
}

/// An immutable convex body with membership, implicit jet, support function,
/// radial function and (where known) exact volume.
#[derive(Debug, Clone)]
pub struct ConvexBody {
    dim: usize,
    shape: Shape,
}

/// JSON descriptor, e.g. `{"kind":"ellipsoid","axes":[2,1,1]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BodyDescriptor {
    #[serde(alias = "disk", alias = "circle", alias = "sphere")]
    Ball {
        n: usize,
        #[serde(default = "one")]
        radius: f64,
    },
    #[serde(alias = "ellipse")]
    Ellipsoid { axes: Vec<f64> },
    Superellipsoid { exponent: f64, scales: Vec<f64> },
    #[serde(alias = "square")]
    Cube {
        #[serde(default = "two")]
        n: usize,
        #[serde(default = "one")]
        side: f64,
    },
    Affine {
        base: Box<BodyDescriptor>,
        matrix: Vec<Vec<f64>>,
        #[serde(default)]
        shift: Option<Vec<f64>>,
    },
}

fn one() -> f64 {
    1.0
}

fn two() -> usize {
    2
}

impl BodyDescriptor {
    pub fn build(&self) -> Result<ConvexBody> {
        match self {
            BodyDescriptor::Ball { n, radius } => ConvexBody::ball(*n, *radius),
            BodyDescriptor::Ellipsoid { axes } => ConvexBody::ellipsoid(axes),
            BodyDescriptor::Superellipsoid { exponent, scales } => ConvexBody::superellipsoid(*exponent, scales),
            BodyDescriptor::Cube { n, side } => ConvexBody::cube(*n, *side),
            BodyDescriptor::Affine { base, matrix, shift } => {
                let base = base.build()?;
                let a = RMatrix::from_rows(matrix);
                let b = shift.clone().unwrap_or_else(|| vec![0.0; base.dim()]);
                base.apply_affine(&a, &b)
            }
        }
    }
}

impl ConvexBody {
    pub fn ball(n: usize, radius: f64) -> Result<Self> {
        if n == 0 {
            return invalid("ball dimension must be positive");
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return invalid("ball radius must be positive");
        }
        Ok(ConvexBody { dim: n, shape: Shape::Ball { radius } })
    }

    pub fn ellipsoid(axes: &[f64]) -> Result<Self> {
        if axes.is_empty() || axes.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return invalid("ellipsoid semi-axes must be positive");
        }
        Ok(ConvexBody { dim: axes.len(), shape: Shape::Ellipsoid { axes: axes.to_vec() } })
    }

    pub fn superellipsoid(exponent: f64, scales: &[f64]) -> Result<Self> {
        if !(exponent >= 2.0 && exponent.is_finite()) {
            return invalid("superellipsoid exponent must be at least 2 (C^2 boundary)");
        }
        if scales.is_empty() || scales.iter().any(|a| !(*a > 0.0 && a.is_finite())) {
            return invalid("superellipsoid scales must be positive");
        }
        Ok(ConvexBody { dim: scales.len(), shape: Shape::Superellipsoid { exponent, scales: scales.to_vec() } })
    }

    pub fn cube(n: usize, side: f64) -> Result<Self> {
        if n == 0 || !(side > 0.0 && side.is_finite()) {
            return invalid("cube needs positive dimension and side");
        }
        Ok(ConvexBody { dim: n, shape: Shape::Cube { side } })
    }

    /// Image of the body under `x -> A x + b`.
    pub fn apply_affine(&self, a: &RMatrix, b: &[f64]) -> Result<Self> {
        let n = self.dim;
        if a.rows() != n || a.cols() != n || b.len() != n {
            return invalid(format!("affine map must be {n}x{n} with a shift of length {n}"));
        }
        if !a.is_finite() || b.iter().any(|v| !v.is_finite()) {
            return invalid("affine map has non-finite entries");
        }
        let det = a.det();
        let inverse = a.inverse().map_err(|_| Error::InvalidInput("affine matrix is singular".into()))?;
        if det == 0.0 {
            return invalid("affine matrix is singular");
        }
        let (ev, _) = (&a.transpose() * a).symmetric_eigen();
        let sigma_min = ev.iter().cloned().fold(f64::INFINITY, f64::min).max(0.0).sqrt();
        Ok(ConvexBody {
            dim: n,
            shape: Shape::Affine { base: Box::new(self.clone()), matrix: a.clone(), inverse, shift: b.to_vec(), det, sigma_min },
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn tag(&self) -> &'static str {
        match self.shape {
            Shape::Ball { .. } => "ball",
            Shape::Ellipsoid { .. } => "ellipsoid",
            Shape::Superellipsoid { .. } => "superellipsoid",
            Shape::Cube { .. } => "cube",
            Shape::Affine { .. } => "affine-image",
        }
    }

    /// Bodies with a C^2 boundary (all but cubes and their images).
    pub fn is_smooth(&self) -> bool {
        match &self.shape {
            Shape::Cube { .. } => false,
            Shape::Affine { base, .. } => base.is_smooth(),
            _ => true,
        }
    }

    /// Star center used by radial parametrizations.
    pub fn center(&self) -> Vec<f64> {
        match &self.shape {
            Shape::Affine { base, matrix, shift, .. } => {
                let c = base.center();
                matrix.mul_vec(&c).iter().zip(shift).map(|(a, b)| a + b).collect()
            }
            _ => vec![0.0; self.dim],
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match &self.shape {
            Shape::Ball { radius } => x.iter().map(|v| v * v).sum::<f64>() <= radius * radius,
            Shape::Ellipsoid { axes } => x.iter().zip(axes).map(|(v, a)| (v / a) * (v / a)).sum::<f64>() <= 1.0,
            Shape::Superellipsoid { exponent, scales } => {
                x.iter().zip(scales).map(|(v, s)| (v / s).abs().powf(*exponent)).sum::<f64>() <= 1.0
            }
            Shape::Cube { side } => x.iter().all(|v| v.abs() <= 0.5 * side),
            Shape::Affine { base, inverse, shift, .. } => base.contains(&pull_back(inverse, shift, x)),
        }
    }

    /// Implicit function value (negative inside).
    pub fn implicit(&self, x: &[f64]) -> f64 {
        match &self.shape {
            Shape::Ball { radius } => x.iter().map(|v| v * v).sum::<f64>() - radius * radius,
            Shape::Ellipsoid { axes } => x.iter().zip(axes).map(|(v, a)| (v / a) * (v / a)).sum::<f64>() - 1.0,
            Shape::Superellipsoid { exponent, scales } => {
                x.iter().zip(scales).map(|(v, s)| (v / s).abs().powf(*exponent)).sum::<f64>() - 1.0
            }
            Shape::Cube { side } => x.iter().fold(0.0f64, |m, v| m.max(v.abs())) - 0.5 * side,
            Shape::Affine { base, inverse, shift, .. } => base.implicit(&pull_back(inverse, shift, x)),
        }
    }

    /// Exact value, gradient and Hessian of the implicit function.
    pub fn jet(&self, x: &[f64]) -> Result<ImplicitJet> {
        let n = self.dim;
        if x.len() != n {
            return invalid("point dimension mismatch");
        }
        match &self.shape {
            Shape::Ball { .. } => Ok(ImplicitJet {
                value: self.implicit(x),
                grad: x.iter().map(|v| 2.0 * v).collect(),
                hess: RMatrix::diag(&vec![2.0; n]),
            }),
            Shape::Ellipsoid { axes } => Ok(ImplicitJet {
                value: self.implicit(x),
                grad: x.iter().zip(axes).map(|(v, a)| 2.0 * v / (a * a)).collect(),
                hess: RMatrix::diag(&axes.iter().map(|a| 2.0 / (a * a)).collect::<Vec<_>>()),
            }),
            Shape::Superellipsoid { exponent: p, scales } => {
                let grad = x
                    .iter()
                    .zip(scales)
                    .map(|(v, s)| p / s * (v / s).abs().powf(p - 1.0) * v.signum())
                    .collect();
                let diag: Vec<f64> = x
                    .iter()
                    .zip(scales)
                    .map(|(v, s)| p * (p - 1.0) / (s * s) * (v / s).abs().powf(p - 2.0))
                    .collect();
                Ok(ImplicitJet { value: self.implicit(x), grad, hess: RMatrix::diag(&diag) })
            }
            Shape::Cube { .. } => Err(Error::Unsupported("cube boundary is not smooth".into())),
            Shape::Affine { base, inverse, shift, .. } => {
                let y = pull_back(inverse, shift, x);
                let j = base.jet(&y)?;
                // F(x) = G(A^{-1}(x - b)): grad = A^{-T} ∇G, Hess = A^{-T} H A^{-1}
                let grad = inverse.tr_mul_vec(&j.grad);
                let hess = &(&inverse.transpose() * &j.hess) * inverse;
                Ok(ImplicitJet { value: j.value, grad, hess })
            }
        }
    }

    /// Support function `h_K(u) = max_{y in K} u·y`.
    pub fn support(&self, u: &[f64]) -> f64 {
        match &self.shape {
            Shape::Ball { radius } => radius * norm(u),
            Shape::Ellipsoid { axes } => u.iter().zip(axes).map(|(v, a)| (v * a) * (v * a)).sum::<f64>().sqrt(),
            Shape::Superellipsoid { exponent, scales } => {
                let q = exponent / (exponent - 1.0);
                u.iter().zip(scales).map(|(v, s)| (v * s).abs().powf(q)).sum::<f64>().powf(1.0 / q)
            }
            Shape::Cube { side } => 0.5 * side * u.iter().map(|v| v.abs()).sum::<f64>(),
            Shape::Affine { base, matrix, shift, .. } => {
                base.support(&matrix.tr_mul_vec(u)) + u.iter().zip(shift).map(|(a, b)| a * b).sum::<f64>()
            }
        }
    }

    /// A point of the body where `u·y` is maximal.
    pub fn support_point(&self, u: &[f64]) -> Vec<f64> {
        match &self.shape {
            Shape::Ball { radius } => {
                let nu = norm(u);
                u.iter().map(|v| radius * v / nu).collect()
            }
            Shape::Ellipsoid { axes } => {
                let h = self.support(u);
                u.iter().zip(axes).map(|(v, a)| a * a * v / h).collect()
            }
            Shape::Superellipsoid { exponent, scales } => {
                let q = exponent / (exponent - 1.0);
                let h = self.support(u);
                u.iter()
                    .zip(scales)
                    .map(|(v, s)| s * (v * s).abs().powf(q - 1.0) * v.signum() / h.powf(q - 1.0))
                    .collect()
            }
            Shape::Cube { side } => u.iter().map(|v| 0.5 * side * if *v >= 0.0 { 1.0 } else { -1.0 }).collect(),
            Shape::Affine { base, matrix, shift, .. } => {
                let y = base.support_point(&matrix.tr_mul_vec(u));
                matrix.mul_vec(&y).iter().zip(shift).map(|(a, b)| a + b).collect()
            }
        }
    }

    /// Distance from the star center to the boundary along the unit direction `u`.
    pub fn radial(&self, u: &[f64]) -> f64 {
        match &self.shape {
            Shape::Ball { radius } => *radius / norm(u),
            Shape::Ellipsoid { axes } => 1.0 / u.iter().zip(axes).map(|(v, a)| (v / a) * (v / a)).sum::<f64>().sqrt(),
            Shape::Superellipsoid { exponent, scales } => {
                u.iter().zip(scales).map(|(v, s)| (v / s).abs().powf(*exponent)).sum::<f64>().powf(-1.0 / exponent)
            }
            Shape::Cube { side } => 0.5 * side / u.iter().fold(0.0f64, |m, v| m.max(v.abs())),
            Shape::Affine { base, inverse, .. } => {
                let w = inverse.mul_vec(u);
                let nw = norm(&w);
                let dir: Vec<f64> = w.iter().map(|v| v / nw).collect();
                base.radial(&dir) / nw
            }
        }
    }

    pub fn bounding_box(&self) -> Aabb {
        let n = self.dim;
        let mut lo = vec![0.0; n];
        let mut hi = vec![0.0; n];
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            hi[i] = self.support(&e);
            e[i] = -1.0;
            lo[i] = -self.support(&e);
        }
        Aabb { lo, hi }
    }

    /// Exact volume when a closed form is available.
    pub fn volume(&self) -> Option<f64> {
        let n = self.dim;
        match &self.shape {
            Shape::Ball { radius } => Some(unit_ball_volume(n) * radius.powi(n as i32)),
            Shape::Ellipsoid { axes } => Some(unit_ball_volume(n) * axes.iter().product::<f64>()),
            Shape::Superellipsoid { exponent, scales } => {
                let g = gamma_fn(1.0 + 1.0 / exponent).ok()?;
                let gn = gamma_fn(1.0 + n as f64 / exponent).ok()?;
                Some(scales.iter().map(|s| 2.0 * s * g).product::<f64>() / gn)
            }
            Shape::Cube { side } => Some(side.powi(n as i32)),
            Shape::Affine { base, det, .. } => base.volume().map(|v| v * det.abs()),
        }
    }

    /// Lower bound for the distance from an interior point to the boundary
    /// (0 when no cheap bound is known).
    pub fn inner_distance_bound(&self, x: &[f64]) -> f64 {
        let d = match &self.shape {
            Shape::Ball { radius } => radius - norm(x),
            Shape::Ellipsoid { axes } => {
                let s = x.iter().zip(axes).map(|(v, a)| (v / a) * (v / a)).sum::<f64>().sqrt();
                axes.iter().cloned().fold(f64::INFINITY, f64::min) * (1.0 - s)
            }
            Shape::Cube { side } => 0.5 * side - x.iter().fold(0.0f64, |m, v| m.max(v.abs())),
            Shape::Superellipsoid { .. } => 0.0,
            Shape::Affine { base, inverse, shift, sigma_min, .. } => sigma_min * base.inner_distance_bound(&pull_back(inverse, shift, x)),
        };
        d.max(0.0)
    }

    /// Outward unit normal at the radial projection of `x` onto the boundary.
    pub fn radial_normal(&self, x: &[f64]) -> Option<Vec<f64>> {
        let c = self.center();
        let d: Vec<f64> = x.iter().zip(&c).map(|(a, b)| a - b).collect();
        let nd = norm(&d);
        if nd == 0.0 {
            return None;
        }
        let u: Vec<f64> = d.iter().map(|v| v / nd).collect();
        let r = self.radial(&u);
        let p: Vec<f64> = c.iter().zip(&u).map(|(a, b)| a + r * b).collect();
        if let Shape::Cube { .. } = self.shape {
            // the face hit by the ray
            let k = (0..self.dim).max_by(|&i, &j| p[i].abs().total_cmp(&p[j].abs()))?;
            let mut nrm = vec![0.0; self.dim];
            nrm[k] = p[k].signum();
            return Some(nrm);
        }
        let g = match self.jet(&p) {
            Ok(j) => j.grad,
            Err(_) => return None,
        };
        let ng = norm(&g);
        if ng == 0.0 {
            return None;
        }
        Some(g.iter().map(|v| v / ng).collect())
    }
}

#[inline]
pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn pull_back(inverse: &RMatrix, shift: &[f64], x: &[f64]) -> Vec<f64> {
    let d: Vec<f64> = x.iter().zip(shift).map(|(a, b)| a - b).collect();
    inverse.mul_vec(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rng::SampleRng;
    use std::f64::consts::PI;

    fn catalog() -> Vec<ConvexBody> {
        let a = RMatrix::from_rows(&[vec![1.5, 0.3, 0.0], vec![-0.2, 0.8, 0.1], vec![0.0, 0.4, 1.1]]);
        vec![
            ConvexBody::ball(3, 1.3).unwrap(),
            ConvexBody::ellipsoid(&[2.0, 1.0, 0.5]).unwrap(),
            ConvexBody::superellipsoid(4.0, &[1.0, 2.0, 1.5]).unwrap(),
            ConvexBody::cube(3, 2.0).unwrap(),
            ConvexBody::ellipsoid(&[2.0, 1.0, 0.5]).unwrap().apply_affine(&a, &[0.3, -0.1, 0.2]).unwrap(),
        ]
    }

    #[test]
    fn descriptors_parse() {
        let b: BodyDescriptor = serde_json::from_str(r#"{"kind":"ellipsoid","axes":[2,1,1]}"#).unwrap();
        assert_eq!(b.build().unwrap().dim(), 3);
        let e: BodyDescriptor = serde_json::from_str(r#"{"kind":"ellipse","axes":[2,1]}"#).unwrap();
        assert_eq!(e.build().unwrap().tag(), "ellipsoid");
        let s: BodyDescriptor = serde_json::from_str(r#"{"kind":"square"}"#).unwrap();
        assert_eq!(s.build().unwrap().volume(), Some(1.0));
        let bad: std::result::Result<BodyDescriptor, _> = serde_json::from_str(r#"{"kind":"torus"}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn center_inside_and_box_excludes() {
        for body in catalog() {
            assert!(body.contains(&body.center()), "{}", body.tag());
            let bb = body.bounding_box();
            let mut out = bb.hi.clone();
            out[0] += 1e-6;
            assert!(!body.contains(&out));
        }
    }

    #[test]
    fn support_is_positively_homogeneous() {
        for body in catalog() {
            for i in 0..50 {
                let mut rng = SampleRng::new(1, 2, i);
                let mut u = vec![0.0; 3];
                rng.unit_vector(&mut u);
                let lam = rng.uniform_in(0.1, 5.0);
                let scaled: Vec<f64> = u.iter().map(|v| v * lam).collect();
                let (a, b) = (body.support(&scaled), lam * body.support(&u));
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{}", body.tag());
                // the support point realizes the support value and lies on the boundary
                let p = body.support_point(&u);
                let hp: f64 = p.iter().zip(&u).map(|(x, y)| x * y).sum();
                assert!((hp - body.support(&u)).abs() < 1e-10, "{}", body.tag());
            }
        }
    }

    #[test]
    fn radial_points_are_on_boundary_with_nonzero_gradient() {
        for body in catalog() {
            for i in 0..100 {
                let mut rng = SampleRng::new(5, 2, i);
                let mut u = vec![0.0; 3];
                rng.unit_vector(&mut u);
                let r = body.radial(&u);
                let c = body.center();
                let p: Vec<f64> = c.iter().zip(&u).map(|(a, b)| a + r * b).collect();
                assert!(body.implicit(&p).abs() < 1e-12, "{}", body.tag());
                if body.is_smooth() {
                    assert!(norm(&body.jet(&p).unwrap().grad) > 0.0);
                }
            }
        }
    }

    #[test]
    fn analytic_jets_match_finite_differences() {
        for body in catalog().into_iter().filter(|b| b.is_smooth()) {
            for i in 0..20 {
                let mut rng = SampleRng::new(8, 1, i);
                let x: Vec<f64> = (0..3).map(|_| rng.uniform_in(-0.4, 0.4)).collect();
                let j = body.jet(&x).unwrap();
                let h = 1e-5;
                for k in 0..3 {
                    let mut xp = x.clone();
                    let mut xm = x.clone();
                    xp[k] += h;
                    xm[k] -= h;
                    let fd = (body.implicit(&xp) - body.implicit(&xm)) / (2.0 * h);
                    assert!((fd - j.grad[k]).abs() <= 1e-6 * j.grad[k].abs().max(1.0), "{} grad", body.tag());
                    let jp = body.jet(&xp).unwrap();
                    let jm = body.jet(&xm).unwrap();
                    for l in 0..3 {
                        let fd2 = (jp.grad[l] - jm.grad[l]) / (2.0 * h);
                        assert!((fd2 - j.hess[(l, k)]).abs() <= 1e-6 * j.hess[(l, k)].abs().max(1.0), "{} hess", body.tag());
                    }
                }
            }
        }
    }

    #[test]
    fn volumes() {
        let b = ConvexBody::ball(3, 1.0).unwrap();
        let two = RMatrix::diag(&[2.0, 2.0, 2.0]);
        let big = b.apply_affine(&two, &[0.0; 3]).unwrap();
        assert!((big.volume().unwrap() - 8.0 * 4.0 * PI / 3.0).abs() < 1e-12);
        // superellipsoid with p = 2 is the ellipsoid
        let s = ConvexBody::superellipsoid(2.0, &[2.0, 1.0]).unwrap();
        assert!((s.volume().unwrap() - 2.0 * PI).abs() < 1e-12);
        assert!(b.apply_affine(&RMatrix::diag(&[1.0, 0.0, 1.0]), &[0.0; 3]).is_err());
        let id = b.apply_affine(&RMatrix::identity(3), &[0.0; 3]).unwrap();
        assert_eq!(id.volume(), b.volume());
    }

    #[test]
    fn distance_bound_is_a_lower_bound() {
        let e = ConvexBody::ellipsoid(&[2.0, 1.0]).unwrap();
        for i in 0..200 {
            let mut rng = SampleRng::new(9, 0, i);
            let x = [rng.uniform_in(-2.0, 2.0), rng.uniform_in(-1.0, 1.0)];
            if !e.contains(&x) {
                continue;
            }
            let bound = e.inner_distance_bound(&x);
            // brute-force distance to a fine boundary polygon
            let dist = (0..20000)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / 20000.0;
                    ((2.0 * t.cos() - x[0]).powi(2) + (t.sin() - x[1]).powi(2)).sqrt()
                })
                .fold(f64::INFINITY, f64::min);
            assert!(bound <= dist + 1e-6);
        }
    }
}
