//! Levi-polynomial peak functions and their sublevel quantiles.

use holofloat::cr::Domain;
use holofloat::holo::{levi_peak, sublevel_quantiles, sublevel_volume, PeakFamily};
use holofloat::numerics::linalg::C64;

fn main() -> holofloat::Result<()> {
    let domain = Domain::perturbed_ball(2, 0.05)?;
    let p1 = 1.0 / 1.05f64.sqrt();
    let h = levi_peak(&domain, &[C64::new(p1, 0.0), C64::new(0.0, 0.0)])?;
    println!("linear {:?}", h.linear);
    println!("quadratic[0][0] {:.6}  containment {:.4}", h.quadratic[(0, 0)], h.containment);

    let grid = [1e-2, 1e-3, 1e-4];
    let family = sublevel_quantiles(&domain, PeakFamily::levi(&domain, 8)?, &grid, 20_000, 5)?;
    for (i, delta) in grid.iter().enumerate() {
        let eta = family.eta[0][i];
        let check = sublevel_volume(&domain, &family.peaks[0], eta, 100_000, 9)?;
        println!("delta {delta:e}: eta {eta:.5}, re-measured volume {:.3e} ± {:.1e}", check.value, check.std_error);
    }
    Ok(())
}
