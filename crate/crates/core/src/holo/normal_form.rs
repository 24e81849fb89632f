//! Normal form of a tangential quadratic form and the volumes of its sublevel sets.

use crate::cr::density::levi_adapted;
use crate::cr::Domain;
use crate::error::{Error, Result};
use crate::numerics::linalg::{CMatrix, C64};
use crate::numerics::takagi::takagi;

/// Tolerance on the normal-form coefficient bound `φ_j <= 1`.
pub const PHI_TOL: f64 = 1e-9;

/// `Σ Λ_jk z_j z̄_k + Re Σ Mu_jk z_j z_k = Σ |T_j z|² + Re φ_j (T_j z)²`,
/// with `T_j` the rows of `transform`.
#[derive(Debug, Clone)]
pub struct NormalForm {
    pub transform: CMatrix,
    /// Descending, in `[0, 1]`.
    pub phi: Vec<f64>,
}

impl NormalForm {
    pub fn new(transform: CMatrix, phi: Vec<f64>) -> Result<Self> {
        if !transform.is_square() || transform.rows() != phi.len() {
            return Err(Error::InvalidInput("normal form sizes disagree".into()));
        }
        if phi.iter().any(|p| !(*p >= 0.0 && *p <= 1.0 + PHI_TOL)) {
            return Err(Error::InvalidInput("normal form coefficients must lie in [0, 1]".into()));
        }
        let det = transform.det().norm();
        if !(det > 1e-300) || !det.is_finite() {
            return Err(Error::Degenerate("singular normal form transform".into()));
        }
        Ok(NormalForm { transform, phi })
    }

    pub fn dim(&self) -> usize {
        self.phi.len()
    }

    pub fn abs_det(&self) -> f64 {
        self.transform.det().norm()
    }

    /// `Σ |T_j z|² + Re φ_j (T_j z)²`
    pub fn eval(&self, z: &[C64]) -> f64 {
        let y = self.transform.mul_vec(z);
        y.iter().zip(&self.phi).map(|(w, p)| w.norm_sqr() + p * (w * w).re).sum()
    }

    /// `Σ √(1+φ_j²) |T_j z|² + Re φ_j (T_j z)²`, the form whose sublevel
    /// volumes do not depend on `φ`.
    pub fn eval_lifted(&self, z: &[C64]) -> f64 {
        let y = self.transform.mul_vec(z);
        y.iter().zip(&self.phi).map(|(w, p)| (1.0 + p * p).sqrt() * w.norm_sqr() + p * (w * w).re).sum()
    }
}

/// Area of `{z ∈ C : A|z|² + Re B z² < V}`.
pub fn cap_area(a: f64, b: C64, v: f64) -> Result<f64> {
    if !(a.is_finite() && b.re.is_finite() && b.im.is_finite() && v.is_finite()) {
        return Err(Error::InvalidInput("non-finite cap coefficients".into()));
    }
    if !(b.norm() < a) {
        return Err(Error::InvalidInput(format!("cap needs |B| < A, got |B| = {}, A = {a}", b.norm())));
    }
    Ok(std::f64::consts::PI * v.max(0.0) / (a * a - b.norm_sqr()).sqrt())
}

/// Volume in `C^{n−1}` of `{Σ √(1+φ_j²)|T_j z|² + Re φ_j (T_j z)² < V}`.
pub fn hermitian_cap_volume(nf: &NormalForm, v: f64) -> Result<f64> {
    let m = nf.dim();
    let d = nf.abs_det();
    if !(d > 0.0) {
        return Err(Error::Degenerate("singular normal form transform".into()));
    }
    let vp = v.max(0.0);
    let mut fact = 1.0;
    for k in 2..=m {
        fact *= k as f64;
    }
    Ok(std::f64::consts::PI.powi(m as i32) * vp.powi(m as i32) / (fact * d * d))
}

/// Reduces `(Λ, Mu)` to normal form: Cholesky `Λ = Cᵀ C̄`, then Takagi of
/// `C⁻ᵀ Mu C⁻¹ = V diag(φ) Vᵀ` and `T = Vᵀ C`.
pub fn webster_normal_form(lambda: &CMatrix, mu: &CMatrix) -> Result<NormalForm> {
    let m = lambda.rows();
    if !lambda.is_square() || mu.rows() != m || mu.cols() != m {
        return Err(Error::InvalidInput("normal form inputs must be square of equal size".into()));
    }
    let scale = lambda.max_abs().max(1e-300);
    if lambda.non_hermiticity() > 1e-12 * scale {
        return Err(Error::InvalidInput("Lambda is not hermitian".into()));
    }
    let l = lambda
        .cholesky()
        .map_err(|_| Error::InvalidInput("Lambda is not positive definite".into()))?;
    let c = l.transpose();
    let c_inv = c.inverse()?;
    let mu_prime = &(&c_inv.transpose() * mu) * &c_inv;
    let tk = takagi(&mu_prime)?;
    if let Some(p) = tk.phi.iter().find(|p| **p > 1.0 + PHI_TOL) {
        return Err(Error::Numerical(format!("normal form coefficient {p} exceeds 1")));
    }
    let phi = tk.phi.iter().map(|p| p.clamp(0.0, 1.0)).collect();
    NormalForm::new(&tk.u.transpose() * &c, phi)
}

/// Normal form of the local graph function at a boundary point, in the
/// coordinates where the outward complex normal is the last axis and
/// `Re ζ_n > Σ Λ ζ ζ̄ + Re Σ Mu ζ ζ + ...` describes the domain.
pub fn boundary_normal_form(domain: &Domain, p: &[C64]) -> Result<NormalForm> {
    let levi = levi_adapted(domain, p)?;
    let s = 0.5 / levi.normal;
    let lambda = levi.levi.scale(C64::new(s, 0.0));
    let mu = levi.holo_tangential.scale(C64::new(-s, 0.0));
    webster_normal_form(&lambda, &mu)
}
