//! End-to-end acceptance checks. Each criterion prints one `PASS`/`FAIL`
//! line; the process exits non-zero if any fails.
//!
//! `cargo test --test acceptance -- 5 12` runs only the listed criteria.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use holofloat::convex::ConvexBody;
use holofloat::cr::density::density_from_jet;
use holofloat::cr::{fefferman_density, fefferman_density_leviframe, fefferman_total, monge_ampere, transformation_check, tube_density_check, ComplexJet2, Domain};
use holofloat::floating::{asa_limit_study, c_n_constant, wet_volume_exact, AsaStudyOptions, Convention, WetPath};
use holofloat::holo::{cap_area, hermitian_cap_volume, holo_constant, holo_limit_study, HoloStudyOptions, NormalForm};
use holofloat::numerics::linalg::{CMatrix, C64};
use holofloat::numerics::{mc_volume, Aabb, SampleRng};

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_boundary_points(domain: &Domain, count: usize, seed: u64) -> Vec<Vec<C64>> {
    let n = domain.n();
    (0..count as u64)
        .map(|i| {
            let mut rng = SampleRng::new(seed, 0, i);
            let mut u = vec![0.0; 2 * n];
            rng.unit_vector(&mut u);
            domain.boundary_point(&u).expect("boundary point")
        })
        .collect()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn constants() -> Outcome {
    let checks = [
        (holo_constant(1).map_err(|e| e.to_string())?, (PI / 2.0).sqrt()),
        (holo_constant(2).map_err(|e| e.to_string())?, (8.0 * PI / 3.0).cbrt()),
        (holo_constant(3).map_err(|e| e.to_string())?, PI.powf(0.75)),
        (c_n_constant(2, Convention::Printed).map_err(|e| e.to_string())?, 2.0),
        (c_n_constant(3, Convention::Oracle).map_err(|e| e.to_string())?, PI.sqrt()),
    ];
    let worst = checks.iter().map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    check(worst <= 1e-12, format!("max abs error {worst:.1e}"))
}

fn monge_ampere_ball() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        let ball = Domain::ball(n, 1.0).map_err(|e| e.to_string())?;
        for i in 0..100 {
            let mut rng = SampleRng::new(2, n as u64, i);
            let z: Vec<C64> = (0..n).map(|_| C64::new(rng.uniform_in(-0.6, 0.6), rng.uniform_in(-0.6, 0.6))).collect();
            let m = monge_ampere(&ball.jet(&z).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            worst = worst.max((m - 1.0).abs());
        }
    }
    check(worst <= 1e-10, format!("max |M - 1| = {worst:.1e} over 300 points"))
}

fn path_domains() -> Vec<(&'static str, Domain)> {
    vec![
        ("ball C^2", Domain::ball(2, 1.0).unwrap()),
        ("ball C^3", Domain::ball(3, 1.0).unwrap()),
        ("ellipsoid (1,2)", Domain::complex_ellipsoid(&[1.0, 2.0]).unwrap()),
        ("ellipsoid (1,2,3)", Domain::complex_ellipsoid(&[1.0, 2.0, 3.0]).unwrap()),
        ("perturbed ball C^2", Domain::perturbed_ball(2, 0.05).unwrap()),
        ("perturbed ball C^3", Domain::perturbed_ball(3, 0.05).unwrap()),
    ]
}

fn path_agreement() -> Outcome {
    let mut worst: f64 = 0.0;
    for (_, d) in path_domains() {
        for p in random_boundary_points(&d, 100, 3) {
            let a = fefferman_density(&d, &p).map_err(|e| e.to_string())?;
            let b = fefferman_density_leviframe(&d, &p).map_err(|e| e.to_string())?;
            worst = worst.max(rel(b, a));
        }
    }
    check(worst <= 1e-8, format!("max relative difference {worst:.1e} over 600 points"))
}

/// Jet of `1 + exp(Re z_1)/10`.
fn weight_jet(z: &[C64]) -> ComplexJet2 {
    let n = z.len();
    let e = z[0].re.exp() / 10.0;
    let mut grad = vec![C64::new(0.0, 0.0); n];
    grad[0] = C64::new(e / 2.0, 0.0);
    let mut mixed = CMatrix::zeros(n, n);
    mixed[(0, 0)] = C64::new(e / 4.0, 0.0);
    let mut holo = CMatrix::zeros(n, n);
    holo[(0, 0)] = C64::new(e / 4.0, 0.0);
    ComplexJet2 { rho: 1.0 + e, grad, mixed, holo }
}

fn defining_function_invariance() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (_, d) in path_domains() {
        for p in random_boundary_points(&d, 100, 4) {
            let jet = d.jet(&p).map_err(|e| e.to_string())?;
            let a = density_from_jet(&jet).map_err(|e| e.to_string())?;
            let b = density_from_jet(&jet.product(&weight_jet(&p))).map_err(|e| e.to_string())?;
            worst = worst.max(rel(b, a));
            count += 1;
        }
    }
    check(worst <= 1e-8, format!("max relative difference {worst:.1e} over {count} points"))
}

fn fefferman_totals() -> Outcome {
    let cases = [(1, 2.0 * PI), (2, 2f64.powf(4.0 / 3.0) * PI * PI), (3, 2f64.sqrt() * PI.powi(3))];
    let mut worst: f64 = 0.0;
    for (n, exact) in cases {
        let t = fefferman_total(&Domain::ball(n, 1.0).unwrap(), 1_000_000, 5).map_err(|e| e.to_string())?;
        worst = worst.max(rel(t.value, exact));
    }
    check(worst <= 2e-3, format!("max relative error {worst:.1e} at 1e6 samples"))
}

fn transformation_law() -> Outcome {
    let ball = Domain::ball(2, 1.0).unwrap();
    let stretch = CMatrix::diag(&[C64::new(2.0, 0.0), C64::new(1.0, 0.0)]);
    let (c, s) = (0.6, 0.8);
    let unitary = CMatrix::from_rows(&[vec![C64::new(c, 0.0), C64::new(0.0, -s)], vec![C64::new(0.0, -s), C64::new(c, 0.0)]]);
    let a = transformation_check(&ball, &stretch, 1_000_000, 6).map_err(|e| e.to_string())?;
    let b = transformation_check(&ball, &unitary, 1_000_000, 6).map_err(|e| e.to_string())?;
    let ga = rel(a.ratio, 2f64.powf(4.0 / 3.0));
    let gb = rel(b.ratio, 1.0);
    check(ga <= 5e-3 && gb <= 5e-3, format!("diag(2,1) ratio {:.5} (gap {ga:.1e}), unitary ratio {:.5} (gap {gb:.1e})", a.ratio, b.ratio))
}

fn tube_formula() -> Outcome {
    let ellipse = ConvexBody::ellipsoid(&[2.0, 1.0]).unwrap();
    let mut ratios = Vec::new();
    for k in 0..50 {
        let t = 2.0 * PI * (k as f64 + 0.5) / 50.0;
        let x = [2.0 * t.cos(), t.sin()];
        let c = tube_density_check(&ellipse, &x, &[0.3, -0.2], &[-4.0, 2.5]).map_err(|e| e.to_string())?;
        ratios.push(c.density / c.reference);
        ratios.push(c.density_shifted / c.reference);
    }
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let spread = ratios.iter().map(|r| rel(*r, mean)).fold(0.0, f64::max);
    check(spread <= 1e-6 && rel(mean, 1.0) <= 1e-6, format!("constant {mean:.12}, max relative spread {spread:.1e}"))
}

fn convex_exact() -> Outcome {
    let grid = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
    let exact = AsaStudyOptions { path: WetPath::Exact, ..Default::default() };
    let printed = AsaStudyOptions { path: WetPath::Exact, convention: Convention::Printed, ..Default::default() };
    let mut lines = Vec::new();
    let mut ok = true;
    for (n, body, target) in [(3, ConvexBody::ball(3, 1.0).unwrap(), 4.0 * PI), (2, ConvexBody::ball(2, 1.0).unwrap(), 2.0 * PI)] {
        let o = asa_limit_study(&body, &grid, 1, 0, &exact).map_err(|e| e.to_string())?;
        let p = asa_limit_study(&body, &grid, 1, 0, &printed).map_err(|e| e.to_string())?;
        let m = n as f64;
        let factor = ((m + 1.0) / 2.0).powf(2.0 / (m + 1.0));
        let gap = rel(o.fitted_limit, target);
        let miss = rel(p.fitted_limit / target, factor);
        ok &= gap <= 5e-3 && miss <= 1e-2;
        lines.push(format!("n={n} limit gap {gap:.1e}, printed/target {:.4} vs {factor:.4}", p.fitted_limit / target));
    }
    check(ok, lines.join("; "))
}

fn convex_mc_vs_exact() -> Outcome {
    let ball = ConvexBody::ball(3, 1.0).unwrap();
    let grid = [1e-2, 1e-3, 1e-4];
    let opts = AsaStudyOptions { path: WetPath::MonteCarlo, ..Default::default() };
    let r = asa_limit_study(&ball, &grid, 1_000_000, 9, &opts).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for (v, d) in r.volume.iter().zip(&grid) {
        let e = wet_volume_exact(&ball, *d).map_err(|e| e.to_string())?;
        worst = worst.max((v.value - e).abs() / v.std_error);
    }
    check(worst <= 4.0, format!("max deviation {worst:.2} std errors"))
}

fn square_vanishing() -> Outcome {
    let square = ConvexBody::cube(2, 1.0).unwrap();
    let grid = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
    let r = asa_limit_study(&square, &grid, 4_000_000, 10, &AsaStudyOptions::default()).map_err(|e| e.to_string())?;
    let ratio = r.tail_ratio();
    check(ratio < 0.2 && r.is_decreasing(), format!("statistic ratio {ratio:.4}, decreasing {}", r.is_decreasing()))
}

fn holo_disk() -> Outcome {
    let disk = Domain::ball(1, 1.0).unwrap();
    let opts = HoloStudyOptions { family_size: 64, ..Default::default() };
    let s = holo_limit_study(&disk, &[1e-2, 1e-3, 1e-4, 1e-5], 1_000_000, 11, &opts).map_err(|e| e.to_string())?;
    let gap = rel(s.report.fitted_limit, 2.0 * PI);
    check(gap <= 0.02, format!("fitted limit {:.4}, gap {gap:.1e}", s.report.fitted_limit))
}

fn holo_ball() -> Outcome {
    let ball = Domain::ball(2, 1.0).unwrap();
    let opts = HoloStudyOptions { family_size: 2048, saturation: true, ..Default::default() };
    let s = holo_limit_study(&ball, &[1e-2, 1e-3, 1e-4, 1e-5], 10_000_000, 12, &opts).map_err(|e| e.to_string())?;
    let target = 2f64.powf(4.0 / 3.0) * PI * PI;
    let gap = rel(s.report.fitted_limit, target);
    let sat = s.saturation.as_ref().ok_or("saturation check missing")?;
    check(
        gap <= 0.05 && sat.passed,
        format!("fitted limit {:.4} (gap {gap:.1e}), K vs 2K gap {:.2} std errors", s.report.fitted_limit, sat.max_gap_in_std_errors),
    )
}

fn polydisk_vanishing() -> Outcome {
    let polydisk = Domain::polydisk(2).unwrap();
    let grid = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];
    let s = holo_limit_study(&polydisk, &grid, 1_000_000, 13, &HoloStudyOptions::default()).map_err(|e| e.to_string())?;
    let ratio = s.report.tail_ratio();
    check(ratio < 0.2, format!("statistic ratio {ratio:.4}"))
}

fn normal_form_volumes() -> Outcome {
    const SAMPLES: u64 = 1_000_000;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let mut rng = SampleRng::new(14, 0, i);
        let a = rng.uniform_in(0.5, 2.0);
        let b = C64::from_polar(a * rng.uniform_in(0.0, 0.95), rng.uniform_in(0.0, 2.0 * PI));
        let v = rng.uniform_in(0.5, 2.0);
        let exact = cap_area(a, b, v).map_err(|e| e.to_string())?;
        let r = (v / (a - b.norm())).sqrt();
        let est = mc_volume(
            |x: &[f64]| {
                let z = C64::new(x[0], x[1]);
                a * z.norm_sqr() + (b * z * z).re < v
            },
            &Aabb::cube(2, r),
            SAMPLES,
            100 + i,
        )
        .map_err(|e| e.to_string())?;
        worst = worst.max((est.value - exact).abs() / est.std_error);
    }
    for i in 0..20 {
        let mut rng = SampleRng::new(14, 1, i);
        let m = 1 + (i as usize % 3);
        let rows: Vec<Vec<C64>> = (0..m)
            .map(|j| (0..m).map(|k| C64::new(if j == k { 1.0 } else { 0.0 } + 0.3 * rng.normal(), 0.3 * rng.normal())).collect())
            .collect();
        let t = CMatrix::from_rows(&rows);
        let mut phi: Vec<f64> = (0..m).map(|_| rng.uniform()).collect();
        phi.sort_by(|x, y| y.total_cmp(x));
        let v = rng.uniform_in(0.5, 2.0);
        let nf = NormalForm::new(t.clone(), phi).map_err(|e| e.to_string())?;
        let exact = hermitian_cap_volume(&nf, v).map_err(|e| e.to_string())?;
        // lifted form >= (√2 − 1)|T z|², so |z| <= ‖T⁻¹‖ √(V(1+√2))
        let r = t.inverse().map_err(|e| e.to_string())?.frobenius() * (v * (1.0 + 2f64.sqrt())).sqrt();
        let est = mc_volume(
            |x: &[f64]| {
                let z: Vec<C64> = x.chunks(2).map(|c| C64::new(c[0], c[1])).collect();
                nf.eval_lifted(&z) < v
            },
            &Aabb::cube(2 * m, r),
            SAMPLES,
            200 + i,
        )
        .map_err(|e| e.to_string())?;
        worst = worst.max((est.value - exact).abs() / est.std_error);
    }
    check(worst <= 4.0, format!("max deviation {worst:.2} std errors over 40 draws"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        (1, "constants", constants),
        (2, "Monge-Ampère on the ball", monge_ampere_ball),
        (3, "density path agreement", path_agreement),
        (4, "defining-function invariance", defining_function_invariance),
        (5, "Fefferman totals", fefferman_totals),
        (6, "transformation law", transformation_law),
        (7, "tube formula", tube_formula),
        (8, "convex floating body, exact path", convex_exact),
        (9, "convex floating body, MC vs exact", convex_mc_vs_exact),
        (10, "square statistic vanishes", square_vanishing),
        (11, "holomorphic limit, disk", holo_disk),
        (12, "holomorphic limit, ball in C^2", holo_ball),
        (13, "polydisk statistic vanishes", polydisk_vanishing),
        (14, "normal-form cap volumes", normal_form_volumes),
    ];
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id:>2} {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
