//! Wet part `K_δ = {x in K : some cap through x has volume < δ}`.

use super::cap::cap_volume_unchecked;
use super::mincap::MinCapSolver;
use crate::convex::body::{ConvexBody, Shape};
use crate::error::{invalid, Error, Result};
use crate::numerics::mc::{mc_multi_volume, McEstimate};
use crate::numerics::roots::find_root;
use crate::numerics::special::{ball_cap_volume, unit_ball_volume};

/// Point classifier for several thresholds at once.
pub struct WetClassifier<'a> {
    body: &'a ConvexBody,
    solver: MinCapSolver<'a>,
    deltas: Vec<f64>,
    delta_max: f64,
    half_ball: f64,
}

impl<'a> WetClassifier<'a> {
    pub fn new(body: &'a ConvexBody, deltas: &[f64]) -> Result<Self> {
        validate_deltas(body, deltas)?;
        Ok(WetClassifier {
            body,
            solver: MinCapSolver::new(body),
            deltas: deltas.to_vec(),
            delta_max: deltas.iter().cloned().fold(0.0, f64::max),
            half_ball: 0.5 * unit_ball_volume(body.dim()),
        })
    }

    /// Adds 1 to `hits[k]` when `x` lies in the wet part for `deltas[k]`.
    pub fn classify(&self, x: &[f64], hits: &mut [u64]) {
        if !self.body.contains(x) {
            return;
        }
        // every cap through x contains half of an inscribed ball around x
        let d = self.body.inner_distance_bound(x);
        let lower = self.half_ball * d.powi(self.body.dim() as i32);
        if lower >= self.delta_max {
            return;
        }
        // one supporting-direction cap decides all thresholds above it
        let support_cap = match self.body.radial_normal(x) {
            Some(u) => {
                let t: f64 = u.iter().zip(x).map(|(a, b)| a * b).sum();
                cap_volume_unchecked(self.body, &u, t).unwrap_or(f64::INFINITY)
            }
            None => f64::INFINITY,
        };
        let mut min_cap: Option<f64> = None;
        for (k, &delta) in self.deltas.iter().enumerate() {
            if delta <= lower {
                continue;
            }
            let wet = if support_cap < delta {
                true
            } else {
                let m = *min_cap.get_or_insert_with(|| self.solver.solve(x).map(|m| m.volume).unwrap_or(f64::INFINITY));
                m < delta
            };
            if wet {
                hits[k] += 1;
            }
        }
    }

    pub fn is_wet(&self, x: &[f64], k: usize) -> bool {
        let mut hits = vec![0; self.deltas.len()];
        self.classify(x, &mut hits);
        hits[k] > 0
    }
}

fn validate_deltas(body: &ConvexBody, deltas: &[f64]) -> Result<()> {
    let vol = body.volume().ok_or_else(|| Error::Unsupported("body volume unknown".into()))?;
    if deltas.is_empty() {
        return invalid("no delta values");
    }
    for &d in deltas {
        if !(d > 0.0 && d < 0.5 * vol) {
            return invalid(format!("delta {d} outside (0, vol(K)/2 = {})", 0.5 * vol));
        }
    }
    Ok(())
}

/// Monte Carlo volume of the wet part.
pub fn wet_volume(body: &ConvexBody, delta: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    Ok(wet_volumes(body, &[delta], samples, seed)?[0])
}

/// Wet-part volumes for several thresholds from one shared sample stream.
pub fn wet_volumes(body: &ConvexBody, deltas: &[f64], samples: u64, seed: u64) -> Result<Vec<McEstimate>> {
    let c = WetClassifier::new(body, deltas)?;
    mc_multi_volume(&body.bounding_box(), samples, seed, deltas.len(), |x, hits| c.classify(x, hits))
}

/// `(n, J)` when the body is an affine image of the unit ball with `|det| = J`.
pub fn ellipsoidal_reduction(body: &ConvexBody) -> Option<(usize, f64)> {
    let n = body.dim();
    match body.shape() {
        Shape::Ball { radius } => Some((n, radius.powi(n as i32))),
        Shape::Ellipsoid { axes } => Some((n, axes.iter().product())),
        Shape::Affine { base, det, .. } => ellipsoidal_reduction(base).map(|(n, j)| (n, j * det.abs())),
        _ => None,
    }
}

/// Exact wet volume for balls, ellipsoids and their affine images:
/// `J · v_n (1 - r^n)` where the unit-ball cap at offset `r` has volume `δ / J`.
pub fn wet_volume_exact(body: &ConvexBody, delta: f64) -> Result<f64> {
    let (n, jac) = ellipsoidal_reduction(body).ok_or_else(|| Error::Unsupported(format!("no exact wet-volume path for {}", body.tag())))?;
    validate_deltas(body, &[delta])?;
    let target = delta / jac;
    let r = find_root(|t| ball_cap_volume(n, t) - target, 0.0, 1.0, 1e-16)?;
    Ok(jac * unit_ball_volume(n) * (1.0 - r.powi(n as i32)))
}
