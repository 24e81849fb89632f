//! Minimal cap through an interior point: lattice search over directions
//! followed by Nelder–Mead on a local chart of the sphere.

use super::cap::{cap_volume_unchecked, orthonormal_complement};
use crate::convex::body::{norm, ConvexBody};
use crate::error::{invalid, Result};
use crate::numerics::optimize::{nelder_mead, NelderMeadOptions};
use crate::numerics::sphere::low_discrepancy_point;

#[derive(Debug, Clone)]
pub struct MinCap {
    pub volume: f64,
    pub direction: Vec<f64>,
}

/// Reusable solver holding the direction lattice of one body.
#[derive(Debug, Clone)]
pub struct MinCapSolver<'a> {
    body: &'a ConvexBody,
    lattice: Vec<Vec<f64>>,
    step: f64,
    starts: usize,
}

/// Lattice size per dimension: 256 (n=2), 1024 (n=3), 4096 otherwise.
pub fn lattice_size(n: usize) -> usize {
    match n {
        1 => 2,
        2 => 256,
        3 => 1024,
        _ => 4096,
    }
}

impl<'a> MinCapSolver<'a> {
    pub fn new(body: &'a ConvexBody) -> Self {
        let n = body.dim();
        let count = lattice_size(n);
        let lattice = (0..count).map(|i| low_discrepancy_point(n, i, count)).collect();
        // typical spacing of the lattice on the sphere
        let step = match n {
            1 => 0.0,
            2 => std::f64::consts::TAU / count as f64,
            _ => (crate::numerics::special::unit_sphere_area(n) / count as f64).powf(1.0 / (n as f64 - 1.0)),
        };
        MinCapSolver { body, lattice, step, starts: 3 }
    }

    fn cap_through(&self, u: &[f64], x: &[f64]) -> f64 {
        let t: f64 = u.iter().zip(x).map(|(a, b)| a * b).sum();
        cap_volume_unchecked(self.body, u, t).map(|v| v.max(0.0)).unwrap_or(f64::INFINITY)
    }

    /// Minimal cap volume through `x` over all unit directions.
    pub fn solve(&self, x: &[f64]) -> Result<MinCap> {
        if x.len() != self.body.dim() {
            return invalid("point dimension mismatch");
        }
        if !self.body.contains(x) {
            return invalid("point lies outside the body");
        }
        let n = self.body.dim();
        let mut cands: Vec<(f64, usize)> = self.lattice.iter().enumerate().map(|(i, u)| (self.cap_through(u, x), i)).collect();
        let mut best = MinCap { volume: f64::INFINITY, direction: self.lattice[0].clone() };
        if let Some(u) = self.body.radial_normal(x) {
            best = MinCap { volume: self.cap_through(&u, x), direction: u };
        }
        if n == 1 {
            for (v, i) in cands {
                if v < best.volume {
                    best = MinCap { volume: v, direction: self.lattice[i].clone() };
                }
            }
            return Ok(best);
        }
        cands.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut starts: Vec<Vec<f64>> = Vec::new();
        for &(_, i) in &cands {
            let u = &self.lattice[i];
            // skip near-duplicates of an accepted start
            if starts.iter().all(|s| {
                let d: f64 = s.iter().zip(u).map(|(a, b)| (a - b) * (a - b)).sum();
                d.sqrt() > 2.0 * self.step
            }) {
                starts.push(u.clone());
            }
            if starts.len() == self.starts {
                break;
            }
        }
        starts.push(best.direction.clone());
        let lattice_best = cands[0].0.min(best.volume);
        if lattice_best == 0.0 {
            let (v, i) = cands[0];
            if v <= best.volume {
                best = MinCap { volume: v, direction: self.lattice[i].clone() };
            }
            return Ok(best);
        }
        let opts = NelderMeadOptions { step: self.step, f_tol: 1e-10 * lattice_best, x_tol: 1e-10, max_evals: 600 };
        for u0 in starts {
            let basis = orthonormal_complement(&u0);
            let chart = |xi: &[f64]| -> Vec<f64> {
                let mut u = u0.clone();
                for (c, e) in xi.iter().zip(&basis) {
                    u.iter_mut().zip(e).for_each(|(a, b)| *a += c * b);
                }
                let nu = norm(&u);
                u.iter_mut().for_each(|a| *a /= nu);
                u
            };
            let m = nelder_mead(|xi| self.cap_through(&chart(xi), x), &vec![0.0; n - 1], opts);
            if m.value < best.volume {
                best = MinCap { volume: m.value, direction: chart(&m.x) };
            }
        }
        Ok(best)
    }
}

/// Minimal cap volume through an interior point `x` and its direction.
pub fn min_cap_volume(body: &ConvexBody, x: &[f64]) -> Result<MinCap> {
    MinCapSolver::new(body).solve(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rng::SampleRng;
    use crate::numerics::special::{ball_cap_volume, unit_ball_volume};

    #[test]
    fn ball_optimum_is_radial() {
        for n in [2, 3] {
            let b = ConvexBody::ball(n, 1.0).unwrap();
            let solver = MinCapSolver::new(&b);
            for i in 0..40 {
                let mut rng = SampleRng::new(4, n as u64, i);
                let mut u = vec![0.0; n];
                rng.unit_vector(&mut u);
                let r = rng.uniform_in(0.05, 0.99);
                let x: Vec<f64> = u.iter().map(|v| r * v).collect();
                // start the check away from the radial hint
                let m = solver.solve(&x).unwrap();
                assert!((m.volume - ball_cap_volume(n, r)).abs() <= 1e-9 * ball_cap_volume(n, r));
                let cos: f64 = m.direction.iter().zip(&u).map(|(a, b)| a * b).sum();
                assert!(cos.min(1.0).acos() < 1e-3, "n={n} angle {}", cos.min(1.0).acos());
            }
        }
    }

    #[test]
    fn center_and_boundary() {
        let b = ConvexBody::ball(3, 1.0).unwrap();
        let m = min_cap_volume(&b, &[0.0; 3]).unwrap();
        assert!((m.volume - unit_ball_volume(3) / 2.0).abs() < 1e-12);
        let m = min_cap_volume(&b, &[0.0, 0.6, 0.8]).unwrap();
        assert!(m.volume < 1e-12);
        assert!(min_cap_volume(&b, &[1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn ellipse_min_cap_is_affine_image_of_disk() {
        // caps scale by det under x -> A x, so the min cap at A x equals det * min cap at x
        let e = ConvexBody::ellipsoid(&[2.0, 0.5]).unwrap();
        for i in 0..20 {
            let mut rng = SampleRng::new(6, 0, i);
            let mut u = vec![0.0; 2];
            rng.unit_vector(&mut u);
            let r = rng.uniform_in(0.1, 0.95);
            let x = [2.0 * r * u[0], 0.5 * r * u[1]];
            let m = min_cap_volume(&e, &x).unwrap();
            assert!((m.volume - ball_cap_volume(2, r)).abs() < 1e-8, "{} vs {}", m.volume, ball_cap_volume(2, r));
        }
    }

    #[test]
    fn square_corner_triangle() {
        // near the corner the best cap is the triangle cut by the line through x
        // with x at its midpoint: area 2 (a)(b) for distances a, b to the sides
        let s = ConvexBody::cube(2, 1.0).unwrap();
        let (a, b) = (0.01, 0.02);
        let m = min_cap_volume(&s, &[0.5 - a, 0.5 - b]).unwrap();
        assert!((m.volume - 2.0 * a * b).abs() < 1e-9, "{}", m.volume);
    }
}
