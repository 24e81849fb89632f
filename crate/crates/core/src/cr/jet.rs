//! Second-order complex jets of real defining functions.

use crate::error::{Error, Result};
use crate::numerics::linalg::{CMatrix, C64};

/// `ρ`, `∂ρ/∂z_j`, `∂²ρ/∂z_j∂z̄_k` (hermitian) and `∂²ρ/∂z_j∂z_k` (symmetric).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexJet2 {
    pub rho: f64,
    pub grad: Vec<C64>,
    /// `mixed[(j, k)] = ∂²ρ/∂z_j∂z̄_k`
    pub mixed: CMatrix,
    /// `holo[(j, k)] = ∂²ρ/∂z_j∂z_k`
    pub holo: CMatrix,
}

pub const JET_SYMMETRY_TOL: f64 = 1e-12;

impl ComplexJet2 {
    pub fn dim(&self) -> usize {
        self.grad.len()
    }

    pub fn check(&self) -> Result<()> {
        let n = self.dim();
        if self.mixed.rows() != n || self.mixed.cols() != n || self.holo.rows() != n || self.holo.cols() != n {
            return Err(Error::InvalidInput("jet blocks have inconsistent sizes".into()));
        }
        if !self.rho.is_finite() || self.grad.iter().any(|z| !z.is_finite()) || !self.mixed.is_finite() || !self.holo.is_finite() {
            return Err(Error::InvalidInput("non-finite jet entry".into()));
        }
        let scale = self.mixed.max_abs().max(1.0);
        if self.mixed.non_hermiticity() > JET_SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric { asymmetry: self.mixed.non_hermiticity() });
        }
        if self.holo.asymmetry() > JET_SYMMETRY_TOL * self.holo.max_abs().max(1.0) {
            return Err(Error::NotSymmetric { asymmetry: self.holo.asymmetry() });
        }
        Ok(())
    }

    /// Jet of `λρ`.
    pub fn scaled(&self, lambda: f64) -> Self {
        let l = C64::new(lambda, 0.0);
        ComplexJet2 {
            rho: lambda * self.rho,
            grad: self.grad.iter().map(|z| z * lambda).collect(),
            mixed: self.mixed.scale(l),
            holo: self.holo.scale(l),
        }
    }

    /// Jet of the product `g·ρ` of two real functions.
    pub fn product(&self, g: &ComplexJet2) -> Self {
        let n = self.dim();
        let r = self;
        let grad = (0..n).map(|j| g.grad[j] * r.rho + r.grad[j] * g.rho).collect();
        let mixed = CMatrix::from_fn(n, n, |j, k| {
            g.mixed[(j, k)] * r.rho + g.grad[j] * r.grad[k].conj() + r.grad[j] * g.grad[k].conj() + r.mixed[(j, k)] * g.rho
        });
        let holo = CMatrix::from_fn(n, n, |j, k| {
            g.holo[(j, k)] * r.rho + g.grad[j] * r.grad[k] + r.grad[j] * g.grad[k] + r.holo[(j, k)] * g.rho
        });
        ComplexJet2 { rho: g.rho * r.rho, grad, mixed, holo }
    }

    /// Jet of `z -> ρ(M z)` for a complex-linear `M`, given the jet of `ρ` at `M z`.
    pub fn pull_back(&self, m: &CMatrix) -> Self {
        let mt = m.transpose();
        ComplexJet2 {
            rho: self.rho,
            grad: mt.mul_vec(&self.grad),
            mixed: &(&mt * &self.mixed) * &m.conj(),
            holo: &(&mt * &self.holo) * m,
        }
    }

    /// Euclidean gradient length in R^{2n}: `2 (Σ|ρ_{z_j}|²)^{1/2}`.
    pub fn real_gradient_norm(&self) -> f64 {
        2.0 * self.grad.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Real gradient in the coordinates `(x_1, y_1, ..., x_n, y_n)`.
    pub fn real_gradient(&self) -> Vec<f64> {
        self.grad.iter().flat_map(|z| [2.0 * z.re, -2.0 * z.im]).collect()
    }
}

/// `(−1)^n det [[ρ, ρ_{z_j}], [ρ_{z̄_k}, ρ_{z_j z̄_k}]]`.
pub fn monge_ampere(jet: &ComplexJet2) -> Result<f64> {
    jet.check()?;
    let n = jet.dim();
    let b = CMatrix::from_fn(n + 1, n + 1, |r, c| match (r, c) {
        (0, 0) => C64::new(jet.rho, 0.0),
        (0, j) => jet.grad[j - 1],
        (k, 0) => jet.grad[k - 1].conj(),
        (k, j) => jet.mixed[(j - 1, k - 1)],
    });
    let det = b.det();
    let scale = b.max_abs().max(1e-300).powi(n as i32 + 1);
    if det.im.abs() > 1e-10 * det.re.abs().max(scale) {
        return Err(Error::Numerical(format!("Monge–Ampère determinant has imaginary part {}", det.im)));
    }
    Ok(if n.is_multiple_of(2) { det.re } else { -det.re })
}

/// Real coordinates `(x_1, y_1, ...)` to complex `z`.
pub fn to_complex(x: &[f64]) -> Vec<C64> {
    x.chunks_exact(2).map(|p| C64::new(p[0], p[1])).collect()
}

pub fn to_real(z: &[C64]) -> Vec<f64> {
    z.iter().flat_map(|w| [w.re, w.im]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball_jet(z: &[C64]) -> ComplexJet2 {
        let n = z.len();
        ComplexJet2 {
            rho: 1.0 - z.iter().map(|w| w.norm_sqr()).sum::<f64>(),
            grad: z.iter().map(|w| -w.conj()).collect(),
            mixed: CMatrix::identity(n).scale(C64::new(-1.0, 0.0)),
            holo: CMatrix::zeros(n, n),
        }
    }

    #[test]
    fn ball_identity() {
        for n in 1..=3 {
            for k in 0..20 {
                let z: Vec<C64> = (0..n).map(|j| C64::new(0.1 * (k + j) as f64 % 0.7, -0.05 * k as f64 % 0.5)).collect();
                assert!((monge_ampere(&ball_jet(&z)).unwrap() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn scaling() {
        let z = [C64::new(0.3, 0.1), C64::new(-0.2, 0.4)];
        let j = ball_jet(&z);
        let m = monge_ampere(&j).unwrap();
        for l in [0.5, 2.0, 7.0] {
            let ml = monge_ampere(&j.scaled(l)).unwrap();
            assert!((ml - l.powi(3) * m).abs() <= 1e-14 * ml.abs().max(1.0));
        }
        let d = ball_jet(&[C64::new(0.5, 0.0)]);
        assert!((monge_ampere(&d.scaled(2.0)).unwrap() - 4.0 * monge_ampere(&d).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_finite_and_non_hermitian() {
        let mut j = ball_jet(&[C64::new(0.1, 0.0)]);
        j.rho = f64::NAN;
        assert!(monge_ampere(&j).is_err());
        let mut j = ball_jet(&[C64::new(0.1, 0.0), C64::new(0.0, 0.2)]);
        j.mixed[(0, 1)] = C64::new(0.0, 1.0);
        assert!(matches!(monge_ampere(&j), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn coordinates_round_trip() {
        let x = [0.1, -0.2, 0.3, 0.4];
        assert_eq!(to_real(&to_complex(&x)), x.to_vec());
    }
}
