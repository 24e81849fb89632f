//! Reproducible experiments driven by JSON configs.
//!
//! Every run writes `<kind>.csv` (data rows) and `<kind>.json` (summary with
//! the resolved config echoed). Study kinds use the columns
//! `delta,statistic,std_error,samples,K,seed`; the other kinds document
//! their columns in [`ExperimentKind::csv_header`]. Floats are printed in
//! shortest round-trip form.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::convex::{gauss_curvature, BodyDescriptor, ConvexBody};
use crate::cr::density::{fefferman_density, fefferman_density_leviframe};
use crate::cr::{fefferman_total, monge_ampere, transformation_check, tube_density_check, Domain, DomainDescriptor};
use crate::error::Error;
use crate::floating::{asa_limit_study, c_n_constant, convention_ratio, exact_affine_surface_area, AsaStudyOptions, Convention, WetPath};
use crate::holo::{holo_constant, holo_limit_study, HoloStudyOptions, WetMode};
use crate::numerics::linalg::{CMatrix, C64};
use crate::numerics::sphere::low_discrepancy_point;

/// Smallest admissible sample count.
pub const MIN_SAMPLES: u64 = 1000;

/// Smallest admissible δ.
pub const MIN_DELTA: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Constants,
    MaDensity,
    FeffTotal,
    TransformCheck,
    TubeCheck,
    FloatConvex,
    FloatHolo,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Constants => "constants",
            ExperimentKind::MaDensity => "ma-density",
            ExperimentKind::FeffTotal => "feff-total",
            ExperimentKind::TransformCheck => "transform-check",
            ExperimentKind::TubeCheck => "tube-check",
            ExperimentKind::FloatConvex => "float-convex",
            ExperimentKind::FloatHolo => "float-holo",
        }
    }

    pub fn csv_header(self) -> &'static str {
        match self {
            ExperimentKind::Constants => "n,c_n_printed,c_n_oracle,convention_ratio,C_n",
            ExperimentKind::MaDensity => "index,monge_ampere,density,density_leviframe,relative_gap",
            ExperimentKind::FeffTotal => "total,std_error,samples,seed",
            ExperimentKind::TransformCheck => "ratio,std_error,expected,relative_gap,samples,seed",
            ExperimentKind::TubeCheck => "index,curvature,density,density_shifted,reference,ratio",
            ExperimentKind::FloatConvex | ExperimentKind::FloatHolo => "delta,statistic,std_error,samples,K,seed",
        }
    }

    fn needs_domain(self) -> bool {
        matches!(self, ExperimentKind::MaDensity | ExperimentKind::FeffTotal | ExperimentKind::TransformCheck | ExperimentKind::FloatHolo)
    }

    fn needs_body(self) -> bool {
        matches!(self, ExperimentKind::TubeCheck | ExperimentKind::FloatConvex)
    }

    fn is_study(self) -> bool {
        matches!(self, ExperimentKind::FloatConvex | ExperimentKind::FloatHolo)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainDescriptor>,
    /// Convex body, or the tube profile for `tube-check`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub body: Option<BodyDescriptor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub delta_grid: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    /// Peak family size `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out_dir: Option<PathBuf>,
    /// Boundary points for `ma-density` and `tube-check`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    /// Complex-linear map for `transform-check`, rows of `[re, im]` pairs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<Vec<[f64; 2]>>>,
    /// Second imaginary part (all coordinates) for `tube-check`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imaginary_shift: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<Convention>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wet_path: Option<WetPath>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fit_exponent: Option<f64>,
    /// Samples per peak and threshold for the quantile tables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantile_samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wet_mode: Option<WetMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturation: Option<bool>,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind) -> Self {
        ExperimentConfig {
            kind,
            domain: None,
            body: None,
            delta_grid: Vec::new(),
            samples: None,
            family_size: None,
            seed: None,
            out_dir: None,
            points: None,
            map: None,
            imaginary_shift: None,
            convention: None,
            wet_path: None,
            fit_exponent: None,
            quantile_samples: None,
            wet_mode: None,
            saturation: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("config: {e}"))
    }

    /// Fills every default the run would use.
    pub fn resolved(&self) -> Self {
        let mut c = self.clone();
        let k = c.kind;
        if matches!(k, ExperimentKind::FeffTotal | ExperimentKind::TransformCheck | ExperimentKind::FloatConvex | ExperimentKind::FloatHolo) {
            c.samples.get_or_insert(1_000_000);
        }
        if matches!(k, ExperimentKind::MaDensity | ExperimentKind::TubeCheck) {
            c.points.get_or_insert(if k == ExperimentKind::MaDensity { 100 } else { 50 });
        }
        if k == ExperimentKind::TubeCheck {
            c.imaginary_shift.get_or_insert(1.7);
        }
        c.out_dir.get_or_insert_with(|| PathBuf::from("."));
        if k == ExperimentKind::FloatConvex {
            c.convention.get_or_insert(Convention::Oracle);
            c.wet_path.get_or_insert(WetPath::Auto);
        }
        if k == ExperimentKind::FloatHolo {
            let d = HoloStudyOptions::default();
            c.family_size.get_or_insert(d.family_size);
            c.quantile_samples.get_or_insert(d.quantile_samples);
            c.wet_mode.get_or_insert(d.mode);
            c.saturation.get_or_insert(d.saturation);
        }
        c
    }
}

fn complex_map(rows: &[Vec<[f64; 2]>]) -> Result<CMatrix, String> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err("map must be a square matrix".into());
    }
    Ok(CMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

/// Violated preconditions of `config`; empty iff `run` would get past its
/// checks and start computing.
pub fn validate(config: &ExperimentConfig) -> Vec<String> {
    let mut v = Vec::new();
    let k = config.kind;
    let c = config.resolved();
    if c.seed.is_none() {
        v.push("seed missing".to_string());
    }
    if let Some(s) = c.samples {
        if s < MIN_SAMPLES {
            v.push(format!("samples below {MIN_SAMPLES}"));
        }
    }
    if k.is_study() {
        let g = &c.delta_grid;
        if g.is_empty() {
            v.push("delta_grid empty".into());
        } else {
            if g.windows(2).any(|w| !(w[1] < w[0])) {
                v.push("delta_grid not decreasing".into());
            }
            if g.iter().any(|d| !(d.is_finite() && *d >= MIN_DELTA)) {
                v.push(format!("delta_grid entries must be finite and at least {MIN_DELTA}"));
            }
            if g.len() < 2 {
                v.push("delta_grid needs at least two entries".into());
            }
        }
        if let Some(e) = c.fit_exponent {
            if !(e > 0.0 && e.is_finite()) {
                v.push("fit_exponent must be positive".into());
            }
        }
    }
    let domain = if k.needs_domain() {
        match &c.domain {
            None => {
                v.push("domain missing".into());
                None
            }
            Some(d) => match d.build() {
                Ok(d) => Some(d),
                Err(e) => {
                    v.push(format!("domain: {e}"));
                    None
                }
            },
        }
    } else {
        None
    };
    let body = if k.needs_body() {
        match &c.body {
            None => {
                v.push("body missing".into());
                None
            }
            Some(b) => match b.build() {
                Ok(b) => Some(b),
                Err(e) => {
                    v.push(format!("body: {e}"));
                    None
                }
            },
        }
    } else {
        None
    };
    if let Some(d) = &domain {
        if d.is_polydisk() && k != ExperimentKind::FloatHolo {
            v.push("density undefined for polydisk".into());
        }
        if !d.is_bounded() && matches!(k, ExperimentKind::FeffTotal | ExperimentKind::TransformCheck | ExperimentKind::FloatHolo) {
            v.push("domain must be bounded".into());
        }
        if let (Some(v0), Some(first)) = (d.volume(), c.delta_grid.first()) {
            if k == ExperimentKind::FloatHolo && !(*first < 0.5 * v0) {
                v.push("delta_grid must lie below half the domain volume".into());
            }
        }
    }
    if let Some(b) = &body {
        if k == ExperimentKind::TubeCheck && !b.is_smooth() {
            v.push("tube profile must be smooth".into());
        }
        if k == ExperimentKind::FloatConvex && c.wet_path == Some(WetPath::Exact) && exact_affine_surface_area(b).is_none() {
            v.push(format!("no exact wet-volume path for {}", b.tag()));
        }
    }
    if k == ExperimentKind::TransformCheck {
        match &c.map {
            None => v.push("map missing".into()),
            Some(rows) => match complex_map(rows) {
                Err(e) => v.push(e),
                Ok(g) => {
                    if let Some(d) = &domain {
                        if g.rows() != d.n() {
                            v.push("map size does not match the domain dimension".into());
                        }
                    }
                    if !(g.det().norm() > 0.0) {
                        v.push("map is singular".into());
                    }
                }
            },
        }
    }
    if matches!(k, ExperimentKind::MaDensity | ExperimentKind::TubeCheck) && c.points == Some(0) {
        v.push("points must be positive".into());
    }
    if k == ExperimentKind::FloatHolo {
        if c.family_size == Some(0) {
            v.push("family_size must be positive".into());
        }
        if c.quantile_samples.is_some_and(|q| q < MIN_SAMPLES) {
            v.push(format!("quantile_samples below {MIN_SAMPLES}"));
        }
    }
    v
}

/// Failure of a run, mapped to the process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    Validation(Vec<String>),
    Numerical(String),
    Io(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 2,
            RunError::Numerical(_) => 3,
            RunError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Validation(v) => write!(f, "invalid config: {}", v.join("; ")),
            RunError::Numerical(m) => write!(f, "numerical rejection: {m}"),
            RunError::Io(m) => write!(f, "i/o: {m}"),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        if e.is_validation() {
            RunError::Validation(vec![e.to_string()])
        } else {
            RunError::Numerical(e.to_string())
        }
    }
}

/// CSV text and JSON summary of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    pub kind: ExperimentKind,
    pub csv: String,
    pub summary: Value,
}

impl Artifacts {
    /// Writes `<kind>.csv` and `<kind>.json` into `dir`; returns both paths.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf), RunError> {
        std::fs::create_dir_all(dir).map_err(|e| RunError::Io(format!("{}: {e}", dir.display())))?;
        let csv = dir.join(format!("{}.csv", self.kind.name()));
        let json = dir.join(format!("{}.json", self.kind.name()));
        std::fs::write(&csv, &self.csv).map_err(|e| RunError::Io(format!("{}: {e}", csv.display())))?;
        let text = serde_json::to_string_pretty(&self.summary).map_err(|e| RunError::Io(e.to_string()))?;
        std::fs::write(&json, text + "\n").map_err(|e| RunError::Io(format!("{}: {e}", json.display())))?;
        Ok((csv, json))
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

struct Table {
    text: String,
}

impl Table {
    fn new(kind: ExperimentKind) -> Self {
        Table { text: format!("{}\n", kind.csv_header()) }
    }

    fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.text, "{}", cells.join(","));
    }
}

/// Validates, runs and returns the artifacts without touching the filesystem.
pub fn execute(config: &ExperimentConfig) -> Result<Artifacts, RunError> {
    let violations = validate(config);
    if !violations.is_empty() {
        return Err(RunError::Validation(violations));
    }
    let c = config.resolved();
    let seed = c.seed.expect("validated");
    let mut table = Table::new(c.kind);
    let result: Value = match c.kind {
        ExperimentKind::Constants => {
            let mut rows = Vec::new();
            for n in 1..=4usize {
                let printed = c_n_constant(n, Convention::Printed).ok();
                let oracle = c_n_constant(n, Convention::Oracle).ok();
                let ratio = (n >= 2).then(|| convention_ratio(n));
                let big = holo_constant(n)?;
                table.row(&[n.to_string(), opt(printed), opt(oracle), opt(ratio), big.to_string()]);
                rows.push(json!({"n": n, "c_n_printed": printed, "c_n_oracle": oracle, "convention_ratio": ratio, "C_n": big}));
            }
            json!({ "constants": rows })
        }
        ExperimentKind::MaDensity => {
            let domain = domain_of(&c)?;
            let count = c.points.expect("resolved");
            let n = domain.n();
            let mut worst: f64 = 0.0;
            for i in 0..count {
                let p = boundary_sample(&domain, i, count)?;
                let m = monge_ampere(&domain.jet(&p)?)?;
                let a = fefferman_density(&domain, &p)?;
                let b = fefferman_density_leviframe(&domain, &p)?;
                let gap = ((a - b) / a).abs();
                worst = worst.max(gap);
                table.row(&[i.to_string(), m.to_string(), a.to_string(), b.to_string(), gap.to_string()]);
            }
            json!({ "n": n, "points": count, "max_relative_gap": worst })
        }
        ExperimentKind::FeffTotal => {
            let domain = domain_of(&c)?;
            let samples = c.samples.expect("resolved");
            let t = fefferman_total(&domain, samples, seed)?;
            table.row(&[t.value.to_string(), t.std_error.to_string(), samples.to_string(), seed.to_string()]);
            json!({ "value": t.value, "std_error": t.std_error })
        }
        ExperimentKind::TransformCheck => {
            let domain = domain_of(&c)?;
            let g = complex_map(c.map.as_ref().expect("validated")).map_err(|e| RunError::Validation(vec![e]))?;
            let samples = c.samples.expect("resolved");
            let t = transformation_check(&domain, &g, samples, seed)?;
            table.row(&[
                t.ratio.to_string(),
                t.ratio_std_error.to_string(),
                t.expected.to_string(),
                t.relative_gap().to_string(),
                samples.to_string(),
                seed.to_string(),
            ]);
            json!({
                "ratio": t.ratio, "ratio_std_error": t.ratio_std_error, "expected": t.expected,
                "relative_gap": t.relative_gap(), "base_total": t.base, "image_total": t.image,
            })
        }
        ExperimentKind::TubeCheck => {
            let profile = body_of(&c)?;
            let count = c.points.expect("resolved");
            let n = profile.dim();
            let y = vec![0.0; n];
            let ys = vec![c.imaginary_shift.expect("resolved"); n];
            let center = profile.center();
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            let mut shift_gap: f64 = 0.0;
            for i in 0..count {
                let u = low_discrepancy_point(n, i, count);
                let r = profile.radial(&u);
                let x: Vec<f64> = center.iter().zip(&u).map(|(c, d)| c + r * d).collect();
                let kappa = gauss_curvature(&profile, &x)?.kappa;
                let t = tube_density_check(&profile, &x, &y, &ys)?;
                lo = lo.min(t.ratio());
                hi = hi.max(t.ratio());
                shift_gap = shift_gap.max(((t.density_shifted - t.density) / t.density).abs());
                table.row(&[
                    i.to_string(),
                    kappa.to_string(),
                    t.density.to_string(),
                    t.density_shifted.to_string(),
                    t.reference.to_string(),
                    t.ratio().to_string(),
                ]);
            }
            json!({
                "points": count, "ratio_min": lo, "ratio_max": hi,
                "ratio_spread": (hi - lo) / lo, "max_shift_gap": shift_gap, "expected_ratio": 1.0,
            })
        }
        ExperimentKind::FloatConvex => {
            let body = body_of(&c)?;
            let samples = c.samples.expect("resolved");
            let opts = AsaStudyOptions {
                convention: c.convention.expect("resolved"),
                fit_exponent: c.fit_exponent,
                path: c.wet_path.expect("resolved"),
            };
            let r = asa_limit_study(&body, &c.delta_grid, samples, seed, &opts)?;
            for (d, s) in r.delta_grid.iter().zip(&r.statistic) {
                table.row(&[d.to_string(), s.value.to_string(), s.std_error.to_string(), s.samples.to_string(), String::new(), seed.to_string()]);
            }
            let n = body.dim();
            json!({
                "fitted_limit": r.fitted_limit, "fitted_limit_std_error": r.fitted_limit_std_error,
                "fit_exponent": r.fit_exponent, "fit_residual": r.fit_residual,
                "constant": r.constant, "constant_label": r.constant_label,
                "convention_ratio": convention_ratio(n),
                "reference": r.reference, "relative_gap": r.relative_gap(),
                "tail_ratio": r.tail_ratio(), "decreasing": r.is_decreasing(),
            })
        }
        ExperimentKind::FloatHolo => {
            let domain = domain_of(&c)?;
            let samples = c.samples.expect("resolved");
            let opts = HoloStudyOptions {
                family_size: c.family_size.expect("resolved"),
                quantile_samples: c.quantile_samples.expect("resolved"),
                mode: c.wet_mode.expect("resolved"),
                fit_exponent: c.fit_exponent,
                saturation: c.saturation.expect("resolved"),
            };
            let s = holo_limit_study(&domain, &c.delta_grid, samples, seed, &opts)?;
            let r = &s.report;
            for (d, st) in r.delta_grid.iter().zip(&r.statistic) {
                table.row(&[d.to_string(), st.value.to_string(), st.std_error.to_string(), st.samples.to_string(), s.family_size.to_string(), seed.to_string()]);
            }
            json!({
                "fitted_limit": r.fitted_limit, "fitted_limit_std_error": r.fitted_limit_std_error,
                "fit_exponent": r.fit_exponent, "fit_residual": r.fit_residual,
                "constant": r.constant, "reference_total": r.reference, "relative_gap": r.relative_gap(),
                "tail_ratio": r.tail_ratio(), "decreasing": r.is_decreasing(),
                "family_size": s.family_size, "wet_mode": s.mode,
                "mean_eta": s.mean_eta, "quantile_rel_error": s.quantile_rel_error,
                "saturation": s.saturation,
            })
        }
    };
    let summary = json!({ "config": c, "result": result });
    Ok(Artifacts { kind: c.kind, csv: table.text, summary })
}

/// `execute` followed by writing the artifacts into the configured directory.
pub fn run(config: &ExperimentConfig) -> Result<Artifacts, RunError> {
    let artifacts = execute(config)?;
    let dir = config.resolved().out_dir.expect("resolved");
    artifacts.write(&dir)?;
    Ok(artifacts)
}

fn domain_of(c: &ExperimentConfig) -> Result<Domain, RunError> {
    Ok(c.domain.as_ref().expect("validated").build()?)
}

fn body_of(c: &ExperimentConfig) -> Result<ConvexBody, RunError> {
    Ok(c.body.as_ref().expect("validated").build()?)
}

fn boundary_sample(domain: &Domain, i: usize, count: usize) -> Result<Vec<C64>, RunError> {
    let u = low_discrepancy_point(2 * domain.n(), i, count);
    Ok(domain.boundary_point(&u)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball_holo() -> ExperimentConfig {
        let mut c = ExperimentConfig::new(ExperimentKind::FloatHolo);
        c.domain = Some(DomainDescriptor::Ball { n: 2, radius: 1.0 });
        c.delta_grid = vec![1e-2, 1e-3];
        c.seed = Some(1);
        c
    }

    #[test]
    fn validation_messages() {
        assert!(validate(&ball_holo()).is_empty());
        let mut c = ball_holo();
        c.delta_grid = vec![1e-3, 1e-2];
        assert!(validate(&c).contains(&"delta_grid not decreasing".to_string()));
        let mut c = ExperimentConfig::new(ExperimentKind::FeffTotal);
        c.domain = Some(DomainDescriptor::Polydisk { n: 2 });
        c.seed = Some(3);
        assert_eq!(validate(&c), vec!["density undefined for polydisk".to_string()]);
        c.seed = None;
        assert!(validate(&c).contains(&"seed missing".to_string()));
        let mut c = ball_holo();
        c.samples = Some(10);
        assert!(validate(&c).iter().any(|m| m.starts_with("samples below")));
    }

    #[test]
    fn config_round_trip_and_unknown_fields() {
        let text = r#"{"kind":"float-holo","domain":{"kind":"disk"},"delta_grid":[0.01,0.001],"seed":4,"family_size":8}"#;
        let c = ExperimentConfig::from_json(text).unwrap();
        assert_eq!(c.family_size, Some(8));
        let again = ExperimentConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(c, again);
        assert!(ExperimentConfig::from_json(r#"{"kind":"constants","sed":1}"#).is_err());
    }

    #[test]
    fn constants_run() {
        let mut c = ExperimentConfig::new(ExperimentKind::Constants);
        c.seed = Some(0);
        let a = execute(&c).unwrap();
        let lines: Vec<&str> = a.csv.lines().collect();
        assert_eq!(lines[0], "n,c_n_printed,c_n_oracle,convention_ratio,C_n");
        assert_eq!(lines.len(), 5);
        let c1: f64 = lines[1].split(',').nth(4).unwrap().parse().unwrap();
        assert!((c1 - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-12);
        assert_eq!(a.summary["config"]["kind"], "constants");
    }

    #[test]
    fn numerical_and_validation_exit_codes() {
        assert_eq!(RunError::Validation(vec![]).exit_code(), 2);
        assert_eq!(RunError::Numerical(String::new()).exit_code(), 3);
        let mut c = ball_holo();
        c.delta_grid = vec![1e-3, 1e-2];
        assert_eq!(execute(&c).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn study_csv_is_reproducible() {
        let mut c = ExperimentConfig::new(ExperimentKind::FloatHolo);
        c.domain = Some(DomainDescriptor::Disk {});
        c.delta_grid = vec![1e-2, 1e-3];
        c.samples = Some(20_000);
        c.family_size = Some(8);
        c.quantile_samples = Some(5_000);
        c.seed = Some(9);
        let a = execute(&c).unwrap();
        let b = execute(&c).unwrap();
        assert_eq!(a.csv, b.csv);
        assert!(a.csv.starts_with("delta,statistic,std_error,samples,K,seed\n0.01,"));
        assert_eq!(a.summary["config"]["family_size"], 8);
        assert_eq!(a.summary["config"]["wet_mode"], "continuous");
    }
}
