//! Holomorphic floating body of the disk and the ball in C²: the
//! normalized wet volume approaches the total Fefferman measure.

use holofloat::cr::Domain;
use holofloat::holo::{holo_limit_study, HoloStudyOptions};

fn main() -> holofloat::Result<()> {
    let grid = [1e-2, 1e-3, 1e-4, 1e-5];
    for (name, domain, k) in [("disk", Domain::ball(1, 1.0)?, 64), ("ball in C^2", Domain::ball(2, 1.0)?, 128)] {
        let opts = HoloStudyOptions { family_size: k, quantile_samples: 20_000, ..Default::default() };
        let s = holo_limit_study(&domain, &grid, 200_000, 1, &opts)?;
        let r = &s.report;
        let stats: Vec<String> = r.statistic.iter().map(|s| format!("{:.4}", s.value)).collect();
        println!("{name}: {}", stats.join(" -> "));
        println!("  fitted limit {:.4} ± {:.4}, total measure {:.4}", r.fitted_limit, r.fitted_limit_std_error, r.reference.unwrap_or(f64::NAN));
    }
    Ok(())
}
