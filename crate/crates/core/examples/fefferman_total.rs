//! Boundary totals of the Fefferman measure on spheres and a complex ellipsoid.

use std::f64::consts::PI;

use holofloat::cr::{fefferman_total, Domain};

fn main() -> holofloat::Result<()> {
    let cases = [
        ("circle", Domain::ball(1, 1.0)?, Some(2.0 * PI)),
        ("S^3", Domain::ball(2, 1.0)?, Some(2f64.powf(4.0 / 3.0) * PI * PI)),
        ("S^5", Domain::ball(3, 1.0)?, Some(2f64.sqrt() * PI.powi(3))),
        ("ellipsoid (1,2)", Domain::complex_ellipsoid(&[1.0, 2.0])?, None),
    ];
    for (name, domain, exact) in cases {
        let t = fefferman_total(&domain, 200_000, 7)?;
        match exact {
            Some(e) => println!("{name:>16}: {:.6} ± {:.1e}  (exact {e:.6})", t.value, t.std_error),
            None => println!("{name:>16}: {:.6} ± {:.1e}", t.value, t.std_error),
        }
    }
    Ok(())
}
