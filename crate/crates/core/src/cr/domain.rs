//! Model domains in C^n with `ρ > 0` inside.

use serde::{Deserialize, Serialize};

use super::jet::ComplexJet2;
use crate::convex::{BodyDescriptor, ConvexBody};
use crate::error::{invalid, Error, Result};
use crate::numerics::linalg::{CMatrix, C64};
use crate::numerics::mc::Aabb;
use crate::numerics::special::unit_ball_volume;

#[derive(Debug, Clone)]
pub enum Domain {
    /// `ρ = R² − |z|²`
    Ball { n: usize, radius: f64 },
    /// `ρ = 1 − Σ a_j |z_j|²`
    ComplexEllipsoid { a: Vec<f64> },
    /// `ρ = 1 − |z|² − ε Re z_1²`
    PerturbedBall { n: usize, eps: f64 },
    /// `ρ = −F(Re z)` over a convex profile `{F < 0}`; unbounded in `Im z`.
    Tube { profile: ConvexBody },
    /// Unit polydisk; not strictly pseudoconvex, no jet.
    Polydisk { n: usize },
    /// `G(base)` for an invertible complex-linear `G`.
    LinearImage { base: Box<Domain>, g: CMatrix, g_inv: CMatrix },
    /// Same domain, defining function multiplied by `1 + weight·exp(Re z_1)`.
    Rescaled { base: Box<Domain>, weight: f64 },
}

/// JSON descriptor, e.g. `{"kind":"perturbed-ball","n":2,"eps":0.05}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DomainDescriptor {
    Ball {
        n: usize,
        #[serde(default = "one")]
        radius: f64,
    },
    /// The unit disk in C.
    Disk {},
    ComplexEllipsoid { a: Vec<f64> },
    PerturbedBall { n: usize, eps: f64 },
    Tube { profile: BodyDescriptor },
    Polydisk { n: usize },
    /// `matrix` rows of `[re, im]` pairs.
    LinearImage { base: Box<DomainDescriptor>, matrix: Vec<Vec<[f64; 2]>> },
    Rescaled {
        base: Box<DomainDescriptor>,
        #[serde(default = "tenth")]
        weight: f64,
    },
}

fn one() -> f64 {
    1.0
}

fn tenth() -> f64 {
    0.1
}

impl DomainDescriptor {
    pub fn build(&self) -> Result<Domain> {
        match self {
            DomainDescriptor::Ball { n, radius } => Domain::ball(*n, *radius),
            DomainDescriptor::Disk {} => Domain::ball(1, 1.0),
            DomainDescriptor::ComplexEllipsoid { a } => Domain::complex_ellipsoid(a),
            DomainDescriptor::PerturbedBall { n, eps } => Domain::perturbed_ball(*n, *eps),
            DomainDescriptor::Tube { profile } => Domain::tube(profile.build()?),
            DomainDescriptor::Polydisk { n } => Domain::polydisk(*n),
            DomainDescriptor::LinearImage { base, matrix } => {
                let rows: Vec<Vec<C64>> = matrix.iter().map(|r| r.iter().map(|p| C64::new(p[0], p[1])).collect()).collect();
                if rows.iter().any(|r| r.len() != rows.len()) {
                    return invalid("linear map must be square");
                }
                base.build()?.linear_image(&CMatrix::from_rows(&rows))
            }
            DomainDescriptor::Rescaled { base, weight } => base.build()?.rescaled(*weight),
        }
    }
}

impl Domain {
    pub fn ball(n: usize, radius: f64) -> Result<Self> {
        if n == 0 || !(radius > 0.0 && radius.is_finite()) {
            return invalid("ball needs n >= 1 and a positive radius");
        }
        Ok(Domain::Ball { n, radius })
    }

    pub fn complex_ellipsoid(a: &[f64]) -> Result<Self> {
        if a.is_empty() || a.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
            return invalid("complex ellipsoid weights must be positive");
        }
        Ok(Domain::ComplexEllipsoid { a: a.to_vec() })
    }

    pub fn perturbed_ball(n: usize, eps: f64) -> Result<Self> {
        if n == 0 || !(eps.abs() < 1.0) {
            return invalid("perturbed ball needs n >= 1 and |eps| < 1");
        }
        Ok(Domain::PerturbedBall { n, eps })
    }

    pub fn tube(profile: ConvexBody) -> Result<Self> {
        if !profile.is_smooth() {
            return invalid("tube profile must have a smooth boundary");
        }
        Ok(Domain::Tube { profile })
    }

    pub fn polydisk(n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("polydisk needs n >= 1");
        }
        Ok(Domain::Polydisk { n })
    }

    pub fn linear_image(&self, g: &CMatrix) -> Result<Self> {
        let n = self.n();
        if g.rows() != n || !g.is_square() || !g.is_finite() {
            return invalid(format!("linear map must be a finite {n}x{n} matrix"));
        }
        if g.det().norm() == 0.0 {
            return invalid("linear map is singular");
        }
        let g_inv = g.inverse().map_err(|_| Error::InvalidInput("linear map is singular".into()))?;
        Ok(Domain::LinearImage { base: Box::new(self.clone()), g: g.clone(), g_inv })
    }

    pub fn rescaled(&self, weight: f64) -> Result<Self> {
        if !(weight >= 0.0 && weight.is_finite()) {
            return invalid("rescaling weight must be nonnegative");
        }
        Ok(Domain::Rescaled { base: Box::new(self.clone()), weight })
    }

    pub fn n(&self) -> usize {
        match self {
            Domain::Ball { n, .. } | Domain::PerturbedBall { n, .. } | Domain::Polydisk { n } => *n,
            Domain::ComplexEllipsoid { a } => a.len(),
            Domain::Tube { profile } => profile.dim(),
            Domain::LinearImage { base, .. } | Domain::Rescaled { base, .. } => base.n(),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Domain::Ball { .. } => "ball",
            Domain::ComplexEllipsoid { .. } => "complex-ellipsoid",
            Domain::PerturbedBall { .. } => "perturbed-ball",
            Domain::Tube { .. } => "tube",
            Domain::Polydisk { .. } => "polydisk",
            Domain::LinearImage { .. } => "linear-image",
            Domain::Rescaled { .. } => "rescaled",
        }
    }

    pub fn is_polydisk(&self) -> bool {
        match self {
            Domain::Polydisk { .. } => true,
            Domain::LinearImage { base, .. } | Domain::Rescaled { base, .. } => base.is_polydisk(),
            _ => false,
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            Domain::Tube { .. } => false,
            Domain::LinearImage { base, .. } | Domain::Rescaled { base, .. } => base.is_bounded(),
            _ => true,
        }
    }

    /// Defining function value (`> 0` inside). For the polydisk,
    /// `min_j (1 − |z_j|²)`.
    pub fn rho(&self, z: &[C64]) -> f64 {
        match self {
            Domain::Ball { radius, .. } => radius * radius - norm2(z),
            Domain::ComplexEllipsoid { a } => 1.0 - z.iter().zip(a).map(|(w, a)| a * w.norm_sqr()).sum::<f64>(),
            Domain::PerturbedBall { eps, .. } => 1.0 - norm2(z) - eps * (z[0] * z[0]).re,
            Domain::Tube { profile } => -profile.implicit(&z.iter().map(|w| w.re).collect::<Vec<_>>()),
            Domain::Polydisk { .. } => z.iter().map(|w| 1.0 - w.norm_sqr()).fold(f64::INFINITY, f64::min),
            Domain::LinearImage { base, g_inv, .. } => base.rho(&g_inv.mul_vec(z)),
            Domain::Rescaled { base, weight } => (1.0 + weight * z[0].re.exp()) * base.rho(z),
        }
    }

    pub fn contains(&self, z: &[C64]) -> bool {
        self.rho(z) > 0.0
    }

    /// Membership in real coordinates `(x_1, y_1, ...)`.
    #[inline]
    pub fn contains_real(&self, x: &[f64]) -> bool {
        match self {
            Domain::Ball { radius, .. } => x.iter().map(|v| v * v).sum::<f64>() < radius * radius,
            Domain::Polydisk { .. } => x.chunks_exact(2).all(|p| p[0] * p[0] + p[1] * p[1] < 1.0),
            _ => self.contains(&super::jet::to_complex(x)),
        }
    }

    pub fn jet(&self, z: &[C64]) -> Result<ComplexJet2> {
        let n = self.n();
        if z.len() != n {
            return invalid("point dimension mismatch");
        }
        let neg = |d: &[f64]| CMatrix::diag(&d.iter().map(|v| C64::new(-v, 0.0)).collect::<Vec<_>>());
        match self {
            Domain::Ball { .. } => Ok(ComplexJet2 {
                rho: self.rho(z),
                grad: z.iter().map(|w| -w.conj()).collect(),
                mixed: neg(&vec![1.0; n]),
                holo: CMatrix::zeros(n, n),
            }),
            Domain::ComplexEllipsoid { a } => Ok(ComplexJet2 {
                rho: self.rho(z),
                grad: z.iter().zip(a).map(|(w, a)| -w.conj() * *a).collect(),
                mixed: neg(a),
                holo: CMatrix::zeros(n, n),
            }),
            Domain::PerturbedBall { eps, .. } => {
                let mut grad: Vec<C64> = z.iter().map(|w| -w.conj()).collect();
                grad[0] -= z[0] * *eps;
                let mut holo = CMatrix::zeros(n, n);
                holo[(0, 0)] = C64::new(-eps, 0.0);
                Ok(ComplexJet2 { rho: self.rho(z), grad, mixed: neg(&vec![1.0; n]), holo })
            }
            Domain::Tube { profile } => {
                // ρ = −F(x): ρ_{z_j} = −F_j/2, ρ_{z_j z̄_k} = ρ_{z_j z_k} = −F_jk/4
                let x: Vec<f64> = z.iter().map(|w| w.re).collect();
                let j = profile.jet(&x)?;
                let h = CMatrix::from_fn(n, n, |a, b| C64::new(-0.25 * j.hess[(a, b)], 0.0));
                Ok(ComplexJet2 { rho: -j.value, grad: j.grad.iter().map(|v| C64::new(-0.5 * v, 0.0)).collect(), mixed: h.clone(), holo: h })
            }
            Domain::Polydisk { .. } => Err(Error::Unsupported("density undefined for polydisk".into())),
            Domain::LinearImage { base, g_inv, .. } => Ok(base.jet(&g_inv.mul_vec(z))?.pull_back(g_inv)),
            Domain::Rescaled { base, weight } => {
                // g = 1 + w e^{x_1}: g_{z_1} = g_{z_1 z̄_1} ·2 = g_{z_1 z_1} ·2 = w e^{x_1}/2
                let e = weight * z[0].re.exp();
                let mut grad = vec![C64::new(0.0, 0.0); n];
                grad[0] = C64::new(0.5 * e, 0.0);
                let mut second = CMatrix::zeros(n, n);
                second[(0, 0)] = C64::new(0.25 * e, 0.0);
                let g = ComplexJet2 { rho: 1.0 + e, grad, mixed: second.clone(), holo: second };
                Ok(base.jet(z)?.product(&g))
            }
        }
    }

    pub fn center(&self) -> Vec<C64> {
        match self {
            Domain::Tube { profile } => profile.center().into_iter().map(|v| C64::new(v, 0.0)).collect(),
            Domain::LinearImage { base, g, .. } => g.mul_vec(&base.center()),
            Domain::Rescaled { base, .. } => base.center(),
            _ => vec![C64::new(0.0, 0.0); self.n()],
        }
    }

    /// Bounding box in R^{2n}.
    pub fn bounding_box(&self) -> Result<Aabb> {
        let n = self.n();
        match self {
            Domain::Ball { radius, .. } => Ok(Aabb::cube(2 * n, *radius)),
            Domain::ComplexEllipsoid { a } => {
                let hi: Vec<f64> = a.iter().flat_map(|v| [1.0 / v.sqrt(); 2]).collect();
                Ok(Aabb { lo: hi.iter().map(|v| -v).collect(), hi })
            }
            Domain::PerturbedBall { eps, .. } => {
                // real ellipsoid (1+ε)x_1² + (1−ε)y_1² + rest < 1
                let mut hi = vec![1.0; 2 * n];
                hi[0] = 1.0 / (1.0 + eps).sqrt();
                hi[1] = 1.0 / (1.0 - eps).sqrt();
                Ok(Aabb { lo: hi.iter().map(|v| -v).collect(), hi })
            }
            Domain::Polydisk { .. } => Ok(Aabb::cube(2 * n, 1.0)),
            Domain::Tube { .. } => Err(Error::Unsupported("tube domains are unbounded".into())),
            Domain::Rescaled { base, .. } => base.bounding_box(),
            Domain::LinearImage { base, g, .. } => {
                // image of the base box corners under G as a real map
                let bb = base.bounding_box()?;
                let m = 2 * n;
                let mut lo = vec![f64::INFINITY; m];
                let mut hi = vec![f64::NEG_INFINITY; m];
                for mask in 0u64..(1 << m) {
                    let x: Vec<f64> = (0..m).map(|i| if mask & (1 << i) != 0 { bb.hi[i] } else { bb.lo[i] }).collect();
                    let y = super::jet::to_real(&g.mul_vec(&super::jet::to_complex(&x)));
                    for i in 0..m {
                        lo[i] = lo[i].min(y[i]);
                        hi[i] = hi[i].max(y[i]);
                    }
                }
                Ok(Aabb { lo, hi })
            }
        }
    }

    /// Lebesgue volume in R^{2n} when known in closed form.
    pub fn volume(&self) -> Option<f64> {
        let n = self.n();
        let v = unit_ball_volume(2 * n);
        match self {
            Domain::Ball { radius, .. } => Some(v * radius.powi(2 * n as i32)),
            Domain::ComplexEllipsoid { a } => Some(v / a.iter().product::<f64>()),
            Domain::PerturbedBall { eps, .. } => Some(v / ((1.0 + eps) * (1.0 - eps)).sqrt()),
            Domain::Polydisk { .. } => Some(std::f64::consts::PI.powi(n as i32)),
            Domain::Tube { .. } => None,
            Domain::LinearImage { base, g, .. } => base.volume().map(|b| b * g.det().norm_sqr()),
            Domain::Rescaled { base, .. } => base.volume(),
        }
    }

    /// Distance from the center to the boundary along the real unit direction
    /// `u ∈ S^{2n−1}` (coordinates `(x_1, y_1, ...)`).
    pub fn radial(&self, u: &[f64]) -> Result<f64> {
        let w = super::jet::to_complex(u);
        match self {
            Domain::Ball { radius, .. } => Ok(*radius),
            Domain::ComplexEllipsoid { a } => Ok(1.0 / w.iter().zip(a).map(|(w, a)| a * w.norm_sqr()).sum::<f64>().sqrt()),
            Domain::PerturbedBall { eps, .. } => Ok(1.0 / (norm2(&w) + eps * (w[0] * w[0]).re).sqrt()),
            Domain::Polydisk { .. } => Ok(1.0 / w.iter().map(|v| v.norm()).fold(0.0, f64::max)),
            Domain::Tube { .. } => Err(Error::Unsupported("tube domains are unbounded".into())),
            Domain::Rescaled { base, .. } => base.radial(u),
            Domain::LinearImage { base, g_inv, .. } => {
                let v = g_inv.mul_vec(&w);
                let nv = norm2(&v).sqrt();
                let dir = super::jet::to_real(&v.iter().map(|z| z / nv).collect::<Vec<_>>());
                Ok(base.radial(&dir)? / nv)
            }
        }
    }

    /// Distance from the center to the boundary.
    pub fn inradius(&self) -> Result<f64> {
        match self {
            Domain::Ball { radius, .. } => Ok(*radius),
            Domain::ComplexEllipsoid { a } => Ok(1.0 / a.iter().cloned().fold(0.0, f64::max).sqrt()),
            Domain::PerturbedBall { eps, .. } => Ok(1.0 / (1.0 + eps.abs()).sqrt()),
            Domain::Polydisk { .. } => Ok(1.0),
            Domain::Tube { profile } => {
                let c = profile.center();
                Ok(profile.inner_distance_bound(&c))
            }
            Domain::Rescaled { base, .. } => base.inradius(),
            Domain::LinearImage { base, g, .. } => {
                // the image of a ball of radius ρ contains the ball of radius σ_min(G)·ρ
                let sigma_min = (&g.adjoint() * g).hermitian_eigenvalues().into_iter().fold(f64::INFINITY, f64::min).max(0.0).sqrt();
                Ok(sigma_min * base.inradius()?)
            }
        }
    }

    /// `center + radial(u)·u`.
    pub fn boundary_point(&self, u: &[f64]) -> Result<Vec<C64>> {
        let r = self.radial(u)?;
        let w = super::jet::to_complex(u);
        Ok(self.center().iter().zip(&w).map(|(c, d)| c + d * r).collect())
    }
}

#[inline]
pub(crate) fn norm2(z: &[C64]) -> f64 {
    z.iter().map(|w| w.norm_sqr()).sum()
}
