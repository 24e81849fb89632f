//! Deterministic parallel Monte Carlo.
//!
//! Samples are processed in fixed-size chunks; each chunk produces a partial
//! tally and the partials are combined in chunk order. Together with the
//! counter-based streams this makes every estimate independent of the number
//! of worker threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::SampleRng;
use crate::error::{invalid, Result};

/// Samples per work unit. Fixed so that reductions never depend on scheduling.
pub const CHUNK: u64 = 8192;

/// A Monte Carlo estimate with its binomial/sample standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    pub fn exact(value: f64) -> Self {
        McEstimate { value, std_error: 0.0, samples: 1, seed: 0 }
    }

    /// Multiplies value and error by a positive constant.
    pub fn scaled(self, factor: f64) -> Self {
        McEstimate {
            value: self.value * factor,
            std_error: self.std_error * factor.abs(),
            ..self
        }
    }

    /// Relative standard error (`inf` when the value is zero but the error is not).
    pub fn rel_error(&self) -> f64 {
        if self.std_error == 0.0 {
            0.0
        } else {
            self.std_error / self.value.abs()
        }
    }
}

/// Axis-aligned box in R^d.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aabb {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Aabb {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return invalid("box bounds must have equal, nonzero length");
        }
        if lo.iter().chain(hi.iter()).any(|v| !v.is_finite()) {
            return invalid("box bounds must be finite");
        }
        if lo.iter().zip(&hi).any(|(l, h)| h <= l) {
            return invalid("box must have positive volume");
        }
        Ok(Aabb { lo, hi })
    }

    /// The cube `[-r, r]^dim`.
    pub fn cube(dim: usize, r: f64) -> Self {
        Aabb { lo: vec![-r; dim], hi: vec![r; dim] }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn volume(&self) -> f64 {
        self.lo.iter().zip(&self.hi).map(|(l, h)| h - l).product()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (l, h))| *v >= *l && *v <= *h)
    }

    /// Writes a uniform point of the box into `out`.
    #[inline]
    pub fn sample(&self, rng: &mut SampleRng, out: &mut [f64]) {
        for ((o, l), h) in out.iter_mut().zip(&self.lo).zip(&self.hi) {
            *o = rng.uniform_in(*l, *h);
        }
    }
}

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        return invalid("zero samples");
    }
    Ok(())
}

/// Runs `chunk_fn` over fixed chunks of `0..samples` in parallel and returns
/// the partial results in chunk order.
pub fn par_chunks<T, F>(samples: u64, chunk_fn: F) -> Vec<T>
where
    T: Send,
    F: Fn(std::ops::Range<u64>) -> T + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            chunk_fn(start..(start + CHUNK).min(samples))
        })
        .collect()
}

/// Volume of `{x in box : membership(x)}` by uniform sampling of the box.
pub fn mc_volume<F>(membership: F, bbox: &Aabb, samples: u64, seed: u64) -> Result<McEstimate>
where
    F: Fn(&[f64]) -> bool + Sync,
{
    let est = mc_multi_volume(bbox, samples, seed, 1, |x, hits| {
        if membership(x) {
            hits[0] += 1;
        }
    })?;
    Ok(est[0])
}

/// Estimates `m` volumes at once on a shared sample stream. `classify` adds 1
/// to `hits[k]` for every set `k` the point belongs to.
pub fn mc_multi_volume<F>(bbox: &Aabb, samples: u64, seed: u64, m: usize, classify: F) -> Result<Vec<McEstimate>>
where
    F: Fn(&[f64], &mut [u64]) + Sync,
{
    check_samples(samples)?;
    Aabb::new(bbox.lo.clone(), bbox.hi.clone())?;
    let dim = bbox.dim();
    let partials = par_chunks(samples, |range| {
        let mut hits = vec![0u64; m];
        let mut x = vec![0.0; dim];
        for i in range {
            let mut rng = SampleRng::new(seed, 0, i);
            bbox.sample(&mut rng, &mut x);
            classify(&x, &mut hits);
        }
        hits
    });
    let mut total = vec![0u64; m];
    for p in partials {
        for (t, h) in total.iter_mut().zip(p) {
            *t += h;
        }
    }
    let vol = bbox.volume();
    Ok(total
        .into_iter()
        .map(|h| binomial_estimate(h, samples, vol, seed))
        .collect())
}

/// Volume estimate from a hit count: `box_volume * hits / samples` with the
/// binomial standard error.
pub fn binomial_estimate(hits: u64, samples: u64, box_volume: f64, seed: u64) -> McEstimate {
    let p = hits as f64 / samples as f64;
    let se = (p * (1.0 - p) / samples as f64).max(0.0).sqrt();
    McEstimate { value: box_volume * p, std_error: box_volume * se, samples, seed }
}

/// Mean of `f(rng, index)` over `samples` independent streams, with the
/// standard error of the mean.
pub fn mc_mean<F>(samples: u64, seed: u64, f: F) -> Result<McEstimate>
where
    F: Fn(&mut SampleRng, u64) -> f64 + Sync,
{
    mc_mean_stream(samples, seed, 0, f)
}

/// `mc_mean` on sub-stream `stream` of `seed`.
pub fn mc_mean_stream<F>(samples: u64, seed: u64, stream: u64, f: F) -> Result<McEstimate>
where
    F: Fn(&mut SampleRng, u64) -> f64 + Sync,
{
    check_samples(samples)?;
    let partials = par_chunks(samples, |range| {
        let mut s = 0.0;
        let mut s2 = 0.0;
        for i in range {
            let mut rng = SampleRng::new(seed, stream, i);
            let v = f(&mut rng, i);
            s += v;
            s2 += v * v;
        }
        (s, s2)
    });
    let (mut s, mut s2) = (0.0, 0.0);
    for (a, b) in partials {
        s += a;
        s2 += b;
    }
    let n = samples as f64;
    let mean = s / n;
    let var = if samples > 1 { ((s2 - n * mean * mean) / (n - 1.0)).max(0.0) } else { 0.0 };
    // Constant integrands leave round-off in `var`; clamp it away.
    let se = if var <= 1e-24 * mean * mean { 0.0 } else { (var / n).sqrt() };
    Ok(McEstimate { value: mean, std_error: se, samples, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn empty_and_full_sets() {
        let b = Aabb::cube(2, 1.0);
        let e = mc_volume(|_| false, &b, 1000, 1).unwrap();
        assert_eq!((e.value, e.std_error), (0.0, 0.0));
        let unit = Aabb::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        let f = mc_volume(|_| true, &unit, 1000, 1).unwrap();
        assert_eq!((f.value, f.std_error), (1.0, 0.0));
    }

    #[test]
    fn rejects_bad_inputs() {
        let b = Aabb::cube(2, 1.0);
        assert!(mc_volume(|_| true, &b, 0, 1).is_err());
        assert!(Aabb::new(vec![0.0], vec![f64::INFINITY]).is_err());
        assert!(Aabb::new(vec![0.0], vec![0.0]).is_err());
    }

    #[test]
    fn disk_area_within_four_sigma() {
        let b = Aabb::cube(2, 1.0);
        let e = mc_volume(|x| x[0] * x[0] + x[1] * x[1] < 1.0, &b, 10_000_000, 2024).unwrap();
        assert!((e.value - PI).abs() < 4.0 * e.std_error, "{e:?}");
    }

    #[test]
    fn nested_sets_are_ordered_on_shared_stream() {
        let b = Aabb::cube(3, 1.0);
        let small = mc_volume(|x| x.iter().map(|v| v * v).sum::<f64>() < 0.49, &b, 50_000, 9).unwrap();
        let large = mc_volume(|x| x.iter().map(|v| v * v).sum::<f64>() < 0.5, &b, 50_000, 9).unwrap();
        assert!(small.value <= large.value);
    }

    #[test]
    fn deterministic_across_thread_pools() {
        let b = Aabb::cube(2, 1.0);
        let run = || mc_volume(|x| x[0] * x[0] + x[1] * x[1] < 1.0, &b, 100_000, 5).unwrap();
        let base = run();
        for threads in [1, 3] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let other = pool.install(run);
            assert_eq!(base.value.to_bits(), other.value.to_bits());
        }
    }
}
