//! Takagi factorization `S = U diag(phi) U^T` of a complex symmetric matrix.
//!
//! Writing `S = A + iB`, the vectors `u = x + iy` with `S conj(u) = phi u`
//! are exactly the eigenvectors `(x, y)` of the real symmetric matrix
//! `[[A, B], [B, -A]]` for the eigenvalue `phi`. Its spectrum is `±phi`, so
//! the nonnegative half yields the factorization. Null directions come in
//! pairs `(x, y)`, `(-y, x)` spanning one complex direction; they are reduced
//! by complex Gram–Schmidt.

use super::linalg::{CMatrix, RMatrix, C64};
use crate::error::{Error, Result};

/// Symmetry tolerance for inputs, relative to the largest entry (absolute when the matrix is tiny).
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct Takagi {
    /// Unitary factor.
    pub u: CMatrix,
    /// Takagi values, sorted descending.
    pub phi: Vec<f64>,
}

impl Takagi {
    /// `U diag(phi) U^T`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.phi.len();
        let scaled = CMatrix::from_fn(n, n, |i, j| self.u[(i, j)] * self.phi[j]);
        &scaled * &self.u.transpose()
    }
}

pub fn takagi(s: &CMatrix) -> Result<Takagi> {
    if !s.is_square() {
        return Err(Error::InvalidInput("Takagi factorization needs a square matrix".into()));
    }
    if !s.is_finite() {
        return Err(Error::InvalidInput("non-finite matrix entry".into()));
    }
    let n = s.rows();
    let asym = s.asymmetry();
    if asym > SYMMETRY_TOL * s.max_abs().max(1.0) {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    let scale = s.max_abs();
    if scale == 0.0 {
        return Ok(Takagi { u: CMatrix::identity(n), phi: vec![0.0; n] });
    }

    let mut m = RMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = 0.5 * (s[(i, j)] + s[(j, i)]);
            m[(i, j)] = z.re;
            m[(i, j + n)] = z.im;
            m[(i + n, j)] = z.im;
            m[(i + n, j + n)] = -z.re;
        }
    }
    let (vals, vecs) = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..2 * n).collect();
    order.sort_by(|&a, &b| vals[b].total_cmp(&vals[a]));

    let zero_tol = 1e-12 * scale;
    let mut columns: Vec<Vec<C64>> = Vec::with_capacity(n);
    let mut phi = Vec::with_capacity(n);
    for &k in &order {
        if columns.len() == n || vals[k] <= zero_tol {
            break;
        }
        columns.push((0..n).map(|i| C64::new(vecs[(i, k)], vecs[(i + n, k)])).collect());
        phi.push(vals[k]);
    }
    // Remaining directions: the numerically null pairs. Gram–Schmidt in C^n.
    for &k in &order {
        if columns.len() == n {
            break;
        }
        if vals[k].abs() > zero_tol {
            continue;
        }
        let mut v: Vec<C64> = (0..n).map(|i| C64::new(vecs[(i, k)], vecs[(i + n, k)])).collect();
        for _ in 0..2 {
            for c in &columns {
                let proj: C64 = c.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                v.iter_mut().zip(c).for_each(|(x, a)| *x -= proj * a);
            }
        }
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            columns.push(v.iter().map(|z| z / norm).collect());
            phi.push(0.0);
        }
    }
    if columns.len() != n {
        return Err(Error::Numerical("Takagi factorization lost rank".into()));
    }
    let u = CMatrix::from_fn(n, n, |i, j| columns[j][i]);
    Ok(Takagi { u, phi })
}
