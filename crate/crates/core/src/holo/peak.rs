//! Quadratic holomorphic peak functions built from the Levi polynomial.

use crate::cr::density::BOUNDARY_TOL;
use crate::cr::jet::to_complex;
use crate::cr::Domain;
use crate::error::{Error, Result};
use crate::numerics::linalg::{unitary_completion, CMatrix, C64};
use crate::numerics::rng::SampleRng;

/// `h(z) = Σ a_j (z_j − p_j) + Σ b_jk (z_j − p_j)(z_k − p_k)` with `|a| = 1`.
#[derive(Debug, Clone)]
pub struct PeakFunction {
    pub base: Vec<C64>,
    pub linear: Vec<C64>,
    /// Symmetric.
    pub quadratic: CMatrix,
    /// `Re h(w) >= c |w − p|²` on the sampled closure of the domain (0 when
    /// no such bound holds).
    pub containment: f64,
    /// Frobenius norm of `quadratic`.
    pub quad_norm: f64,
    /// Unitary frame whose last column is `conj(a)`; in `w = p + W ζ`,
    /// `h = ζ_n + ζᵀ (Wᵀ B W) ζ`.
    pub frame: CMatrix,
}

impl PeakFunction {
    pub fn new(base: Vec<C64>, linear: Vec<C64>, quadratic: CMatrix) -> Result<Self> {
        let n = base.len();
        if linear.len() != n || quadratic.rows() != n || quadratic.cols() != n {
            return Err(Error::InvalidInput("peak coefficient sizes disagree".into()));
        }
        let na = linear.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (na - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!("peak differential must have unit norm, got {na}")));
        }
        let conj: Vec<C64> = linear.iter().map(|z| z.conj()).collect();
        let frame = unitary_completion(&conj);
        let quad_norm = quadratic.frobenius();
        Ok(PeakFunction { base, linear, quadratic, containment: 0.0, quad_norm, frame })
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    #[inline]
    pub fn eval(&self, z: &[C64]) -> C64 {
        let n = self.base.len();
        let mut acc = C64::new(0.0, 0.0);
        let mut d = [C64::new(0.0, 0.0); 8];
        let dz: &mut [C64] = if n <= 8 { &mut d[..n] } else { unreachable!("dimension above 8") };
        for j in 0..n {
            dz[j] = z[j] - self.base[j];
            acc += self.linear[j] * dz[j];
        }
        if self.quad_norm > 0.0 {
            for j in 0..n {
                let mut row = C64::new(0.0, 0.0);
                for k in 0..n {
                    row += self.quadratic[(j, k)] * dz[k];
                }
                acc += row * dz[j];
            }
        }
        acc
    }

    /// Width of the boundary collar containing `{|h| < η}` in a convex domain:
    /// `Re h` bounds the distance to the tangent hyperplane from above up to
    /// the quadratic term.
    pub fn collar_width(&self, eta: f64) -> f64 {
        if self.quad_norm == 0.0 {
            eta
        } else if self.containment > 0.0 {
            eta + self.quad_norm * eta / self.containment
        } else {
            f64::INFINITY
        }
    }

    /// Radius of a ball around the base point containing `{|h| < η}`.
    pub fn containment_radius(&self, eta: f64) -> f64 {
        if self.containment > 0.0 {
            (eta / self.containment).sqrt()
        } else {
            f64::INFINITY
        }
    }

    /// Checks `Re h > 0` on sampled points of the closed domain away from the
    /// base point and records `c = 0.9 · min Re h / |w − p|²`.
    pub fn validate(&mut self, domain: &Domain, probes: usize, seed: u64) -> Result<()> {
        let n = self.dim();
        let mut min_ratio = f64::INFINITY;
        let mut check = |w: &[C64]| -> Result<()> {
            let d2: f64 = w.iter().zip(&self.base).map(|(a, b)| (a - b).norm_sqr()).sum();
            if d2 < 1e-18 {
                return Ok(());
            }
            let re = self.eval(w).re;
            if !(re > 0.0) {
                return Err(Error::PeakValidation { witness: crate::cr::jet::to_real(w) });
            }
            min_ratio = min_ratio.min(re / d2);
            Ok(())
        };
        let bbox = domain.bounding_box()?;
        let center = domain.center();
        let mut u = vec![0.0; 2 * n];
        let mut x = vec![0.0; 2 * n];
        for i in 0..probes as u64 {
            let mut rng = SampleRng::new(seed, 0x9ea4, i);
            rng.unit_vector(&mut u);
            check(&domain.boundary_point(&u)?)?;
            bbox.sample(&mut rng, &mut x);
            let z = to_complex(&x);
            if domain.contains(&z) {
                check(&z)?;
            }
        }
        // boundary points along complex tangential directions near the base point
        let tangential = n - 1;
        for i in 0..(probes / 16).max(8) as u64 {
            let mut rng = SampleRng::new(seed, 0x7a46, i);
            let coeffs: Vec<C64> = (0..tangential).map(|_| C64::new(rng.normal(), rng.normal())).collect();
            let norm = coeffs.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for s in [0.005, 0.02, 0.05, 0.1, 0.2] {
                let mut q = self.base.clone();
                if tangential > 0 && norm > 0.0 {
                    for (j, c) in coeffs.iter().enumerate() {
                        for (r, qr) in q.iter_mut().enumerate() {
                            *qr += self.frame[(r, j)] * (c * (s / norm));
                        }
                    }
                } else {
                    // n = 1: move along the boundary by rotating about the center
                    let rot = C64::from_polar(1.0, s * if i % 2 == 0 { 1.0 } else { -1.0 });
                    q = q.iter().zip(&center).map(|(p, c)| c + (p - c) * rot).collect();
                }
                let dir: Vec<C64> = q.iter().zip(&center).map(|(a, b)| a - b).collect();
                let nd = dir.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                if nd == 0.0 {
                    continue;
                }
                let ur = crate::cr::jet::to_real(&dir.iter().map(|z| z / nd).collect::<Vec<_>>());
                check(&domain.boundary_point(&ur)?)?;
            }
        }
        self.containment = 0.9 * min_ratio;
        Ok(())
    }

    /// `h ∘ U⁻¹` for a unitary `U` (base point moved to `U p`).
    pub fn compose_unitary_inverse(&self, u: &CMatrix) -> Result<Self> {
        let ui = u.inverse()?;
        let uit = ui.transpose();
        let linear = uit.mul_vec(&self.linear);
        let quadratic = &(&uit * &self.quadratic) * &ui;
        let mut out = PeakFunction::new(u.mul_vec(&self.base), linear, quadratic)?;
        out.containment = self.containment;
        Ok(out)
    }
}

/// Unvalidated Levi-polynomial peak at a boundary point:
/// `(Σ ρ_{z_j} d_j + ½ Σ ρ_{z_j z_k} d_j d_k) / |∂ρ(p)|`.
pub fn levi_polynomial(domain: &Domain, p: &[C64]) -> Result<PeakFunction> {
    let jet = domain.jet(p)?;
    if jet.rho.abs() > BOUNDARY_TOL {
        return Err(Error::NotOnBoundary { residual: jet.rho.abs() });
    }
    let g = jet.grad.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(g > 0.0) {
        return Err(Error::Degenerate("vanishing gradient of the defining function".into()));
    }
    let linear: Vec<C64> = jet.grad.iter().map(|z| z / g).collect();
    let quadratic = jet.holo.scale(C64::new(0.5 / g, 0.0));
    PeakFunction::new(p.to_vec(), linear, quadratic)
}

/// Number of probe points used by `levi_peak`.
pub const VALIDATION_PROBES: usize = 512;

/// Levi-polynomial peak at `p`, validated on sampled points of the closure.
pub fn levi_peak(domain: &Domain, p: &[C64]) -> Result<PeakFunction> {
    if domain.is_polydisk() {
        return Err(Error::Unsupported("the polydisk uses its own peak family".into()));
    }
    let mut h = levi_polynomial(domain, p)?;
    h.validate(domain, VALIDATION_PROBES, 0x5eed)?;
    Ok(h)
}

/// One-variable peak `1 − ā z_j` of the unit polydisk at `a e_j`, `|a| = 1`.
pub fn polydisk_peak(n: usize, j: usize, a: C64) -> Result<PeakFunction> {
    if j >= n || (a.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput("polydisk peak needs j < n and |a| = 1".into()));
    }
    let mut base = vec![C64::new(0.0, 0.0); n];
    base[j] = a;
    let mut linear = vec![C64::new(0.0, 0.0); n];
    linear[j] = -a.conj();
    PeakFunction::new(base, linear, CMatrix::zeros(n, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn ball_and_disk_peaks() {
        let b = Domain::ball(2, 1.0).unwrap();
        let h = levi_peak(&b, &[c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        for z in [[c(0.3, 0.1), c(-0.2, 0.5)], [c(0.0, 0.0), c(0.0, 0.0)]] {
            assert!((h.eval(&z) - (c(1.0, 0.0) - z[1])).norm() < 1e-15);
        }
        assert!((h.containment - 0.45).abs() < 1e-3, "{}", h.containment);
        let d = Domain::ball(1, 1.0).unwrap();
        let h = levi_peak(&d, &[c(1.0, 0.0)]).unwrap();
        assert!((h.eval(&[c(0.2, 0.3)]) - c(0.8, -0.3)).norm() < 1e-15);
        assert_eq!(h.eval(&h.base.clone()), c(0.0, 0.0));
    }

    #[test]
    fn perturbed_ball_has_quadratic_term() {
        let eps = 0.05;
        let d = Domain::perturbed_ball(2, eps).unwrap();
        let p1 = 1.0 / (1.0 + eps).sqrt();
        let h = levi_peak(&d, &[c(p1, 0.0), c(0.0, 0.0)]).unwrap();
        // ρ_{z_1 z_1} = −ε, normalized by |∂ρ| = (1+ε) p1
        let g = (1.0 + eps) * p1;
        assert!((h.quadratic[(0, 0)] - c(-0.5 * eps / g, 0.0)).norm() < 1e-14);
        assert!(h.containment > 0.0);
        let na: f64 = h.linear.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((na - 1.0).abs() < 1e-12);
    }

    #[test]
    fn validation_rejects_a_bad_peak() {
        // the antiholomorphic-flipped linear part has Re h < 0 inside
        let b = Domain::ball(2, 1.0).unwrap();
        let mut h = PeakFunction::new(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)], CMatrix::zeros(2, 2)).unwrap();
        assert!(matches!(h.validate(&b, 64, 1), Err(Error::PeakValidation { .. })));
    }

    #[test]
    fn polydisk_peaks() {
        let h = polydisk_peak(2, 1, C64::from_polar(1.0, 0.4)).unwrap();
        let z = [c(0.9, 0.0), C64::from_polar(1.0, 0.4)];
        assert!(h.eval(&z).norm() < 1e-15);
        assert_eq!(h.collar_width(0.01), 0.01);
        assert!(levi_peak(&Domain::polydisk(2).unwrap(), &z).is_err());
    }
}
