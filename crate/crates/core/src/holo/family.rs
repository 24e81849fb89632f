//! Finite peak families and their sublevel-volume quantile tables.
//!
//! For a peak `h_p` and threshold `δ`, `η_p(δ)` solves
//! `vol{w ∈ Ω : |h_p(w)| < η} = δ`. The sublevel set sits in a small box
//! around `p` (adapted coordinates, extents fixed by the containment
//! constant of `h_p`), so each quantile is an order statistic of `|h_p|`
//! over uniform samples of that box rather than of the whole domain.

use rayon::prelude::*;

use super::peak::{levi_peak, polydisk_peak, PeakFunction};
use crate::cr::jet::to_real;
use crate::cr::Domain;
use crate::error::{invalid, Error, Result};
use crate::numerics::kdtree::KdTree;
use crate::numerics::linalg::C64;
use crate::numerics::mc::{binomial_estimate, Aabb, McEstimate};
use crate::numerics::rng::SampleRng;
use crate::numerics::roots::find_root;
use crate::numerics::sphere::low_discrepancy_point;

/// Smallest per-peak sample count accepted for quantiles.
pub const MIN_QUANTILE_SAMPLES: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Validated Levi-polynomial peaks at low-discrepancy boundary points.
    Levi,
    /// `1 − ā z_j` at `m` equally spaced `a` per coordinate.
    Polydisk { per_coordinate: usize },
}

#[derive(Debug, Clone)]
pub struct PeakFamily {
    pub kind: FamilyKind,
    pub peaks: Vec<PeakFunction>,
    /// Strictly decreasing; empty until `sublevel_quantiles` has run.
    pub delta_grid: Vec<f64>,
    /// `eta[k][i] = η_{p_k}(delta_grid[i])`.
    pub eta: Vec<Vec<f64>>,
    /// Per δ, the largest relative standard error of `vol{|h| < η}` at the
    /// tabulated `η` (0 for exact tables).
    pub quantile_rel_error: Vec<f64>,
    tree: KdTree,
}

impl PeakFamily {
    /// `size` validated Levi peaks; rejects the polydisk.
    pub fn levi(domain: &Domain, size: usize) -> Result<Self> {
        if size == 0 {
            return invalid("empty peak family");
        }
        if domain.is_polydisk() {
            return Err(Error::Unsupported("the polydisk uses its own peak family".into()));
        }
        if !domain.is_bounded() {
            return Err(Error::Unsupported("peak families need a bounded domain".into()));
        }
        let m = 2 * domain.n();
        let peaks = (0..size)
            .into_par_iter()
            .map(|i| {
                let u = low_discrepancy_point(m, i, size);
                levi_peak(domain, &domain.boundary_point(&u)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_peaks(FamilyKind::Levi, peaks))
    }

    /// About `size` one-variable peaks of the unit polydisk in `C^n`,
    /// `ceil(size / n)` per coordinate.
    pub fn polydisk(n: usize, size: usize) -> Result<Self> {
        if size == 0 || n == 0 {
            return invalid("empty peak family");
        }
        let per = size.div_ceil(n);
        let mut peaks = Vec::with_capacity(per * n);
        for j in 0..n {
            for k in 0..per {
                let a = C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / per as f64);
                peaks.push(polydisk_peak(n, j, a)?);
            }
        }
        Ok(Self::from_peaks(FamilyKind::Polydisk { per_coordinate: per }, peaks))
    }

    /// Levi family or, for the polydisk, its one-variable family.
    pub fn for_domain(domain: &Domain, size: usize) -> Result<Self> {
        if domain.is_polydisk() {
            Self::polydisk(domain.n(), size)
        } else {
            Self::levi(domain, size)
        }
    }

    fn from_peaks(kind: FamilyKind, peaks: Vec<PeakFunction>) -> Self {
        let dim = 2 * peaks[0].dim();
        let pts: Vec<Vec<f64>> = peaks.iter().map(|p| to_real(&p.base)).collect();
        let tree = KdTree::new(dim, &pts);
        PeakFamily { kind, peaks, delta_grid: Vec::new(), eta: Vec::new(), quantile_rel_error: Vec::new(), tree }
    }

    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }

    pub fn has_tables(&self) -> bool {
        !self.delta_grid.is_empty()
    }

    /// Index of the peak whose base point is nearest to `z`.
    pub fn nearest(&self, z: &[C64]) -> usize {
        self.tree.nearest(&to_real(z)).map(|(i, _)| i).unwrap_or(0)
    }

    /// Calls `visit(k)` for every peak based within euclidean distance `r` of `z`.
    pub fn for_each_within(&self, z: &[C64], r: f64, visit: &mut dyn FnMut(usize) -> bool) {
        self.tree.within(&to_real(z), r, visit);
    }

    /// Smallest containment constant over the family.
    pub fn min_containment(&self) -> f64 {
        self.peaks.iter().map(|p| p.containment).fold(f64::INFINITY, f64::min)
    }

    pub fn max_quad_norm(&self) -> f64 {
        self.peaks.iter().map(|p| p.quad_norm).fold(0.0, f64::max)
    }

    /// `η_{p_k}(δ)`, interpolated log-log between grid points.
    pub fn eta_at(&self, k: usize, delta: f64) -> Result<f64> {
        let grid = &self.delta_grid;
        if grid.is_empty() {
            return invalid("peak family has no quantile table");
        }
        let (hi, lo) = (grid[0], grid[grid.len() - 1]);
        let tol = 1e-12 * delta.abs();
        if !(delta >= lo - tol && delta <= hi + tol) {
            return invalid(format!("delta {delta} outside the quantile table range [{lo}, {hi}]"));
        }
        let row = &self.eta[k];
        if let Some(i) = grid.iter().position(|g| (g - delta).abs() <= tol) {
            return Ok(row[i]);
        }
        let i = grid.iter().position(|g| *g < delta).unwrap_or(grid.len() - 1).max(1);
        let (d0, d1) = (grid[i - 1].ln(), grid[i].ln());
        let s = (delta.ln() - d0) / (d1 - d0);
        Ok((row[i - 1].ln() + s * (row[i].ln() - row[i - 1].ln())).exp())
    }

    /// `η_{p_k}(δ)` for every peak.
    pub fn eta_all(&self, delta: f64) -> Result<Vec<f64>> {
        (0..self.len()).map(|k| self.eta_at(k, delta)).collect()
    }
}

/// Uniform sampler of a region known to contain `{w ∈ Ω : |h(w)| < t}`.
#[derive(Debug, Clone)]
pub(crate) enum SublevelBox {
    /// `w = p + W ζ`, tangential `|Re ζ_j|, |Im ζ_j| <= r`,
    /// `Re ζ_n ∈ [lo, hi]`, `|Im ζ_n| <= im`.
    Local { r: f64, lo: f64, hi: f64, im: f64 },
    Global(Aabb),
}

impl SublevelBox {
    pub(crate) fn new(peak: &PeakFunction, t: f64, bbox: &Aabb) -> Self {
        let n = peak.dim();
        let diam = bbox.lo.iter().zip(&bbox.hi).map(|(l, h)| (h - l) * (h - l)).sum::<f64>().sqrt();
        let r = if peak.containment > 0.0 { (t / peak.containment).sqrt().min(diam) } else { diam };
        let q = peak.quad_norm * r * r;
        let local = SublevelBox::Local { r, lo: -q, hi: t + q, im: t + q };
        if peak.containment > 0.0 && local.volume(n) < bbox.volume() {
            local
        } else {
            SublevelBox::Global(bbox.clone())
        }
    }

    pub(crate) fn volume(&self, n: usize) -> f64 {
        match self {
            SublevelBox::Local { r, lo, hi, im } => (2.0 * r).powi(2 * (n as i32 - 1)) * (hi - lo) * 2.0 * im,
            SublevelBox::Global(b) => b.volume(),
        }
    }

    pub(crate) fn is_global(&self) -> bool {
        matches!(self, SublevelBox::Global(_))
    }

    #[inline]
    pub(crate) fn sample(&self, peak: &PeakFunction, rng: &mut SampleRng, out: &mut [C64], scratch: &mut [f64]) {
        let n = peak.dim();
        match self {
            SublevelBox::Local { r, lo, hi, im } => {
                out.copy_from_slice(&peak.base);
                for j in 0..n {
                    let zeta = if j + 1 < n {
                        C64::new(rng.uniform_in(-r, *r), rng.uniform_in(-r, *r))
                    } else {
                        C64::new(rng.uniform_in(*lo, *hi), rng.uniform_in(-im, *im))
                    };
                    for (row, o) in out.iter_mut().enumerate() {
                        *o += peak.frame[(row, j)] * zeta;
                    }
                }
            }
            SublevelBox::Global(b) => {
                b.sample(rng, scratch);
                for (j, o) in out.iter_mut().enumerate() {
                    *o = C64::new(scratch[2 * j], scratch[2 * j + 1]);
                }
            }
        }
    }
}

/// Counts `{w ∈ Ω : |h(w)| < t}` hits on one sampler stream and, when
/// `keep` is set, returns the sorted hit values.
fn sublevel_pass(
    domain: &Domain,
    peak: &PeakFunction,
    sampler: &SublevelBox,
    t: f64,
    samples: u64,
    seed: u64,
    stream: u64,
    keep: bool,
) -> (u64, Vec<f64>) {
    let n = peak.dim();
    let mut z = vec![C64::new(0.0, 0.0); n];
    let mut scratch = vec![0.0; 2 * n];
    let mut hits = 0u64;
    let mut values = Vec::new();
    for i in 0..samples {
        let mut rng = SampleRng::new(seed, stream, i);
        sampler.sample(peak, &mut rng, &mut z, &mut scratch);
        let a = peak.eval(&z).norm();
        if a < t && domain.contains(&z) {
            hits += 1;
            if keep {
                values.push(a);
            }
        }
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    (hits, values)
}

/// Streams depend on the threshold and pass only: every peak sees the same
/// samples in its own adapted box.
fn stream_id(delta: usize, pass: u64) -> u64 {
    ((delta as u64) << 12) | pass
}

/// `(η(δ), relative standard error of the volume at η)` for every `δ` of a
/// decreasing grid, for one peak.
fn peak_quantiles(domain: &Domain, peak: &PeakFunction, grid: &[f64], samples: u64, seed: u64) -> Result<Vec<(f64, f64)>> {
    let n = peak.dim();
    let bbox = domain.bounding_box()?;
    let exponent = 1.0 / (n as f64 + 1.0);
    let pilot = (samples / 8).max(MIN_QUANTILE_SAMPLES);
    let mut t = grid[0].powf(exponent);
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(grid.len());
    for (i, &delta) in grid.iter().enumerate() {
        if i > 0 {
            t = out[i - 1].0 * 1.3 * (delta / grid[i - 1]).powf(exponent);
        }
        let mut found = None;
        let mut refined = false;
        for attempt in 0..80u64 {
            let sampler = SublevelBox::new(peak, t, &bbox);
            let vol = sampler.volume(n);
            if !refined {
                let (hits, _) = sublevel_pass(domain, peak, &sampler, t, pilot, seed, stream_id(i, 2 * attempt), false);
                let est = vol * hits as f64 / pilot as f64;
                if hits < 32 || est < 1.2 * delta {
                    if sampler.is_global() && est < delta {
                        return Err(Error::Numerical(format!("delta {delta} exceeds the sublevel volumes of a peak")));
                    }
                    t *= 2.0;
                    continue;
                }
                if est > 3.0 * delta && !sampler.is_global() {
                    t *= (1.8 * delta / est).powf(exponent);
                    continue;
                }
            }
            let (_, values) = sublevel_pass(domain, peak, &sampler, t, samples, seed, stream_id(i, 2 * attempt + 1), true);
            let rank = delta * samples as f64 / vol;
            let j = rank.floor() as usize;
            if rank < 1.0 || j >= values.len() {
                refined = false;
                t *= 1.5;
                continue;
            }
            let below = if j == 0 { 0.0 } else { values[j - 1] };
            let eta = below + (rank - j as f64) * (values[j] - below);
            // a box sized just above η spends most hits below the quantile
            if !refined && !sampler.is_global() && rank < 0.3 * values.len() as f64 {
                refined = true;
                t = 1.1 * eta;
                continue;
            }
            let p = rank / samples as f64;
            found = Some((eta, ((1.0 - p) / rank).sqrt()));
            break;
        }
        let entry = found.ok_or_else(|| Error::Numerical(format!("sublevel quantile search did not settle at delta {delta}")))?;
        if let Some(prev) = out.last() {
            if !(entry.0 < prev.0) {
                return Err(Error::Numerical(format!("sublevel quantiles not increasing in delta at delta {delta}")));
            }
        }
        out.push(entry);
    }
    Ok(out)
}

/// Area of `D ∩ D(a, η)` for `|a| = 1`.
pub fn unit_lens_area(eta: f64) -> f64 {
    let e = eta.clamp(0.0, 2.0);
    e * e * (e / 2.0).acos() + 2.0 * (e / 2.0).asin() - 0.5 * e * (4.0 - e * e).sqrt()
}

/// Exact `η(δ)` for a one-variable peak of the unit polydisk in `C^n`.
pub fn polydisk_quantile(n: usize, delta: f64) -> Result<f64> {
    let fiber = std::f64::consts::PI.powi(n as i32 - 1);
    if !(delta > 0.0 && delta < fiber * std::f64::consts::PI) {
        return invalid(format!("delta {delta} outside (0, vol)"));
    }
    find_root(|e| fiber * unit_lens_area(e) - delta, 0.0, 2.0, 1e-13 * delta)
}

/// Fills the quantile tables of `family`; `samples` is the sample count per
/// peak and threshold.
pub fn sublevel_quantiles(domain: &Domain, mut family: PeakFamily, delta_grid: &[f64], samples: u64, seed: u64) -> Result<PeakFamily> {
    if delta_grid.is_empty() {
        return invalid("empty delta_grid");
    }
    if delta_grid.windows(2).any(|w| !(w[1] < w[0])) {
        return invalid("delta_grid not decreasing");
    }
    if samples < MIN_QUANTILE_SAMPLES {
        return invalid(format!("quantile samples must be at least {MIN_QUANTILE_SAMPLES}"));
    }
    if let Some(v) = domain.volume() {
        if !(delta_grid[0] < 0.5 * v) || !(delta_grid[delta_grid.len() - 1] > 0.0) {
            return invalid("delta_grid must lie in (0, vol/2)");
        }
    }
    let (eta, rel) = match family.kind {
        FamilyKind::Polydisk { .. } => {
            let row = delta_grid.iter().map(|d| polydisk_quantile(domain.n(), *d)).collect::<Result<Vec<_>>>()?;
            (vec![row; family.len()], vec![0.0; delta_grid.len()])
        }
        FamilyKind::Levi => {
            let tables = family
                .peaks
                .par_iter()
                .map(|p| peak_quantiles(domain, p, delta_grid, samples, seed))
                .collect::<Result<Vec<_>>>()?;
            let rel = (0..delta_grid.len()).map(|i| tables.iter().map(|r| r[i].1).fold(0.0, f64::max)).collect();
            (tables.into_iter().map(|r| r.into_iter().map(|e| e.0).collect()).collect(), rel)
        }
    };
    family.delta_grid = delta_grid.to_vec();
    family.eta = eta;
    family.quantile_rel_error = rel;
    Ok(family)
}

/// Independent estimate of `vol{w ∈ Ω : |h(w)| < η}`.
pub fn sublevel_volume(domain: &Domain, peak: &PeakFunction, eta: f64, samples: u64, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return invalid("zero samples");
    }
    let sampler = SublevelBox::new(peak, eta, &domain.bounding_box()?);
    let (hits, _) = sublevel_pass(domain, peak, &sampler, eta, samples, seed, 0xb0c5, false);
    Ok(binomial_estimate(hits, samples, sampler.volume(peak.dim()), seed))
}

/// Real coordinates of the base points.
pub fn base_points(family: &PeakFamily) -> Vec<Vec<f64>> {
    family.peaks.iter().map(|p| to_real(&p.base)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cr::jet::to_complex;
    use crate::numerics::mc::mc_volume;
    use std::f64::consts::PI;

    #[test]
    fn disk_quantiles_follow_lens_area() {
        let d = Domain::ball(1, 1.0).unwrap();
        let fam = PeakFamily::levi(&d, 4).unwrap();
        let grid = [1e-2, 1e-3, 1e-4];
        let fam = sublevel_quantiles(&d, fam, &grid, 40_000, 7).unwrap();
        for row in &fam.eta {
            for (e, delta) in row.iter().zip(grid) {
                let exact = find_root(|x| unit_lens_area(x) - delta, 0.0, 1.0, 1e-14).unwrap();
                assert!((e / exact - 1.0).abs() < 0.02, "{e} vs {exact}");
                assert!((e / (2.0 * delta / PI).sqrt() - 1.0).abs() < 0.08);
            }
        }
    }

    #[test]
    fn lens_area_limits() {
        assert!((unit_lens_area(2.0) - PI).abs() < 1e-12);
        let e = 1e-3;
        assert!((unit_lens_area(e) / (PI * e * e / 2.0) - 1.0).abs() < 1e-3);
        let eta = polydisk_quantile(2, 1e-4).unwrap();
        assert!((PI * unit_lens_area(eta) / 1e-4 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn ball_quantile_volume_duality() {
        let b = Domain::ball(2, 1.0).unwrap();
        let fam = PeakFamily::levi(&b, 3).unwrap();
        let grid = [1e-2, 1e-3];
        let fam = sublevel_quantiles(&b, fam, &grid, 40_000, 11).unwrap();
        for (k, p) in fam.peaks.iter().enumerate() {
            for (i, delta) in grid.iter().enumerate() {
                let v = sublevel_volume(&b, p, fam.eta[k][i], 200_000, 99).unwrap();
                assert!((v.value - delta).abs() < 4.0 * v.std_error + 0.02 * delta, "{v:?} vs {delta}");
            }
        }
    }

    #[test]
    fn local_box_agrees_with_global_sampling() {
        let b = Domain::ball(2, 1.0).unwrap();
        let p = levi_peak(&b, &[C64::new(0.0, 0.0), C64::new(1.0, 0.0)]).unwrap();
        let t = 0.3;
        let local = sublevel_volume(&b, &p, t, 400_000, 3).unwrap();
        let bbox = b.bounding_box().unwrap();
        let global = mc_volume(|x| {
            let z = to_complex(x);
            b.contains(&z) && p.eval(&z).norm() < t
        }, &bbox, 400_000, 5).unwrap();
        let s = (local.std_error.powi(2) + global.std_error.powi(2)).sqrt();
        assert!((local.value - global.value).abs() < 4.0 * s, "{local:?} {global:?}");
    }

    #[test]
    fn grid_must_decrease() {
        let d = Domain::ball(1, 1.0).unwrap();
        let fam = PeakFamily::levi(&d, 2).unwrap();
        let err = sublevel_quantiles(&d, fam, &[1e-3, 1e-2], 10_000, 1).unwrap_err();
        assert!(err.to_string().contains("delta_grid not decreasing"));
    }
}
