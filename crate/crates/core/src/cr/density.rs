//! Fefferman density with respect to euclidean surface measure, by the
//! bordered determinant and by the Levi frame.

use super::domain::Domain;
use super::jet::{monge_ampere, ComplexJet2};
use crate::error::{Error, Result};
use crate::numerics::linalg::{unitary_completion, CMatrix, C64};

/// Boundary residual accepted as "on the boundary".
pub const BOUNDARY_TOL: f64 = 1e-9;

/// `2^{2n/(n+1)}`
pub fn density_constant(n: usize) -> f64 {
    let m = n as f64;
    2f64.powf(2.0 * m / (m + 1.0))
}

fn boundary_jet(domain: &Domain, p: &[C64]) -> Result<ComplexJet2> {
    let jet = domain.jet(p)?;
    if jet.rho.abs() > BOUNDARY_TOL {
        return Err(Error::NotOnBoundary { residual: jet.rho.abs() });
    }
    Ok(jet)
}

/// `2^{2n/(n+1)} M(ρ)^{1/(n+1)} / |∇ρ|` from a boundary jet.
pub fn density_from_jet(jet: &ComplexJet2) -> Result<f64> {
    let n = jet.dim();
    let m = monge_ampere(jet)?;
    if !(m > 0.0) {
        return Err(Error::Numerical(format!("Monge–Ampère determinant {m} is not positive")));
    }
    let g = jet.real_gradient_norm();
    if !(g > 0.0) {
        return Err(Error::Degenerate("vanishing gradient of the defining function".into()));
    }
    Ok(density_constant(n) * m.powf(1.0 / (n as f64 + 1.0)) / g)
}

pub fn fefferman_density(domain: &Domain, p: &[C64]) -> Result<f64> {
    density_from_jet(&boundary_jet(domain, p)?)
}

/// Levi data in coordinates `z = W w` whose first `n−1` holomorphic
/// derivatives of `ρ` vanish at the point.
#[derive(Debug, Clone)]
pub struct LeviData {
    pub point: Vec<C64>,
    /// Unitary `W`; its last column is `conj(∂ρ)/|∂ρ|`.
    pub frame: CMatrix,
    /// Negated tangential block of the mixed Hessian, `(n−1)×(n−1)`.
    pub levi: CMatrix,
    /// Tangential block of the holomorphic Hessian.
    pub holo_tangential: CMatrix,
    /// `|∂ρ/∂w_n|`
    pub normal: f64,
}

impl LeviData {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.levi.hermitian_eigenvalues()
    }

    /// `|∂ρ/∂w_n|² det(levi)`, which equals the Monge–Ampère determinant on the boundary.
    pub fn alt_monge_ampere(&self) -> f64 {
        let det = if self.levi.rows() == 0 { 1.0 } else { self.levi.det().re };
        self.normal * self.normal * det
    }
}

pub fn levi_from_jet(point: &[C64], jet: &ComplexJet2) -> Result<LeviData> {
    let n = jet.dim();
    let normal = jet.grad.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if !(normal > 0.0) {
        return Err(Error::Degenerate("vanishing gradient of the defining function".into()));
    }
    let conj_grad: Vec<C64> = jet.grad.iter().map(|z| z.conj()).collect();
    let w = unitary_completion(&conj_grad);
    // ρ(W w): grad' = Wᵀ g, mixed' = Wᵀ H conj(W), holo' = Wᵀ S W
    let adapted = jet.pull_back(&w);
    let t = n - 1;
    let levi = adapted.mixed.block(0..t, 0..t).scale(C64::new(-1.0, 0.0));
    let holo_tangential = adapted.holo.block(0..t, 0..t);
    Ok(LeviData { point: point.to_vec(), frame: w, levi, holo_tangential, normal })
}

pub fn levi_adapted(domain: &Domain, p: &[C64]) -> Result<LeviData> {
    levi_from_jet(p, &boundary_jet(domain, p)?)
}

/// The density computed from `|ρ_{w_n}|² det(levi)` in adapted coordinates.
pub fn fefferman_density_leviframe(domain: &Domain, p: &[C64]) -> Result<f64> {
    let jet = boundary_jet(domain, p)?;
    let levi = levi_from_jet(p, &jet)?;
    let n = jet.dim();
    let m = levi.alt_monge_ampere();
    if !(m > 0.0) {
        return Err(Error::Numerical(format!("Levi determinant gives non-positive Monge–Ampère value {m}")));
    }
    Ok(density_constant(n) * m.powf(1.0 / (n as f64 + 1.0)) / (2.0 * levi.normal))
}
