//! Point sets on the unit sphere `S^{n-1} ⊂ R^n`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::rng::SampleRng;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereSampling {
    /// Independent uniform points from the counter-based streams.
    Random,
    /// Deterministic equidistributed points (equal angles, Fibonacci spiral,
    /// Kronecker sequences mapped by measure-preserving transforms).
    LowDiscrepancy,
}

#[derive(Debug, Clone)]
pub struct SpherePoints {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub low_discrepancy: bool,
}

pub fn sphere_sample(n: usize, count: usize, seed: u64, sampling: SphereSampling) -> Result<SpherePoints> {
    if n == 0 {
        return invalid("sphere dimension must be at least 1");
    }
    let points = match sampling {
        SphereSampling::Random => (0..count)
            .map(|i| {
                let mut rng = SampleRng::new(seed, 0x5e7e, i as u64);
                let mut v = vec![0.0; n];
                rng.unit_vector(&mut v);
                v
            })
            .collect(),
        SphereSampling::LowDiscrepancy => (0..count).map(|i| low_discrepancy_point(n, i, count)).collect(),
    };
    Ok(SpherePoints { dim: n, points, low_discrepancy: sampling == SphereSampling::LowDiscrepancy })
}

/// Point `i` of the deterministic `count`-point set on `S^{n-1}`.
pub fn low_discrepancy_point(n: usize, i: usize, count: usize) -> Vec<f64> {
    match n {
        1 => vec![if i.is_multiple_of(2) { 1.0 } else { -1.0 }],
        2 => {
            let t = TAU * i as f64 / count as f64;
            vec![t.cos(), t.sin()]
        }
        3 => {
            let golden = PI * (3.0 - 5f64.sqrt());
            let z = 1.0 - (2.0 * i as f64 + 1.0) / count as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let t = golden * i as f64;
            vec![r * t.cos(), r * t.sin(), z]
        }
        _ => {
            let u = kronecker(n - 1, i);
            if n.is_multiple_of(2) {
                complex_sphere_map(n / 2, &u)
            } else {
                gaussian_map(n, &kronecker(n, i))
            }
        }
    }
}

/// Additive recurrence with the generalized golden ratio in `d` dimensions.
pub fn kronecker(d: usize, i: usize) -> Vec<f64> {
    // phi_d is the positive root of x^{d+1} = x + 1
    let mut phi = 2.0f64;
    for _ in 0..60 {
        phi = (1.0 + phi).powf(1.0 / (d as f64 + 1.0));
    }
    (1..=d)
        .map(|k| {
            let alpha = phi.powi(-(k as i32)).fract();
            (0.5 + alpha * (i as f64 + 1.0)).fract()
        })
        .collect()
}

/// Uniform map from `[0,1)^{2m-1}` onto the unit sphere of C^m: the squared
/// moduli are uniform on the simplex and the phases uniform on the circle.
fn complex_sphere_map(m: usize, u: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; 2 * m];
    let mut remaining = 1.0;
    let mut moduli = Vec::with_capacity(m);
    for k in 0..m - 1 {
        let b = 1.0 - u[k].powf(1.0 / (m - 1 - k) as f64);
        let s = b * remaining;
        moduli.push(s);
        remaining -= s;
    }
    moduli.push(remaining.max(0.0));
    for k in 0..m {
        let r = moduli[k].sqrt();
        let t = TAU * u[m - 1 + k];
        out[2 * k] = r * t.cos();
        out[2 * k + 1] = r * t.sin();
    }
    out
}

fn gaussian_map(n: usize, u: &[f64]) -> Vec<f64> {
    use statrs::distribution::{ContinuousCDF, Normal};
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let mut v: Vec<f64> = u.iter().take(n).map(|x| normal.inverse_cdf(x.clamp(1e-12, 1.0 - 1e-12))).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= norm);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_dimension_rejected() {
        assert!(sphere_sample(0, 4, 1, SphereSampling::Random).is_err());
    }

    #[test]
    fn s0_and_circle() {
        let s = sphere_sample(1, 2, 0, SphereSampling::LowDiscrepancy).unwrap();
        assert_eq!(s.points, vec![vec![1.0], vec![-1.0]]);
        assert!(s.low_discrepancy);
        let c = sphere_sample(2, 4, 0, SphereSampling::LowDiscrepancy).unwrap();
        let expected = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for (p, e) in c.points.iter().zip(expected) {
            assert!((p[0] - e[0]).abs() < 1e-15 && (p[1] - e[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn random_mean_is_centered() {
        let count = 1_000_000;
        let s = sphere_sample(3, count, 77, SphereSampling::Random).unwrap();
        for k in 0..3 {
            let mean = s.points.iter().map(|p| p[k]).sum::<f64>() / count as f64;
            assert!(mean.abs() < 4.0 / (count as f64).sqrt(), "coordinate {k}: {mean}");
        }
    }

    #[test]
    fn low_discrepancy_points_are_unit_and_balanced() {
        for n in 2..=7 {
            let count = 4096;
            let s = sphere_sample(n, count, 0, SphereSampling::LowDiscrepancy).unwrap();
            let mut mean = vec![0.0; n];
            let mut second = vec![0.0; n];
            for p in &s.points {
                let norm: f64 = p.iter().map(|x| x * x).sum();
                assert!((norm - 1.0).abs() < 1e-12);
                for k in 0..n {
                    mean[k] += p[k] / count as f64;
                    second[k] += p[k] * p[k] / count as f64;
                }
            }
            for k in 0..n {
                assert!(mean[k].abs() < 0.02, "n={n} k={k} mean={}", mean[k]);
                assert!((second[k] - 1.0 / n as f64).abs() < 0.02, "n={n} k={k}");
            }
        }
    }
}
