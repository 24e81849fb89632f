//! Convex floating body: the normalized wet volume tends to the affine
//! surface area for smooth bodies and to zero for the square.

use holofloat::convex::ConvexBody;
use holofloat::floating::{asa_limit_study, AsaStudyOptions, Convention};

fn main() -> holofloat::Result<()> {
    let grid = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6];
    for (name, body) in [("disk", ConvexBody::ball(2, 1.0)?), ("ball", ConvexBody::ball(3, 1.0)?), ("ellipse (2,1)", ConvexBody::ellipsoid(&[2.0, 1.0])?)] {
        for convention in [Convention::Oracle, Convention::Printed] {
            let opts = AsaStudyOptions { convention, ..Default::default() };
            let r = asa_limit_study(&body, &grid, 1, 0, &opts)?;
            println!("{name:>14} {:>13}: limit {:.6}  reference {:.6}", r.constant_label, r.fitted_limit, r.reference.unwrap_or(f64::NAN));
        }
    }
    let square = ConvexBody::cube(2, 1.0)?;
    let r = asa_limit_study(&square, &[1e-2, 1e-3, 1e-4], 200_000, 1, &AsaStudyOptions::default())?;
    let s: Vec<String> = r.statistic.iter().map(|s| format!("{:.4}", s.value)).collect();
    println!("square statistic: {}", s.join(" -> "));
    Ok(())
}
