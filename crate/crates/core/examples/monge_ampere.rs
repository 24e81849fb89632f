//! Monge–Ampère determinant and the Fefferman density by two routes:
//! the bordered determinant and the Levi frame.

use holofloat::cr::density::{fefferman_density, fefferman_density_leviframe, levi_adapted};
use holofloat::cr::{monge_ampere, Domain};
use holofloat::numerics::linalg::C64;

fn main() -> holofloat::Result<()> {
    let ball = Domain::ball(2, 1.0)?;
    let z = [C64::new(0.3, -0.1), C64::new(0.2, 0.4)];
    println!("M(1 - |z|^2) at an interior point: {:.15}", monge_ampere(&ball.jet(&z)?)?);

    let domain = Domain::perturbed_ball(2, 0.05)?;
    for i in 0..4 {
        let t = 0.7 * i as f64;
        let u = [t.cos() * 0.6, t.sin() * 0.6, 0.8, 0.0];
        let p = domain.boundary_point(&u)?;
        let levi = levi_adapted(&domain, &p)?;
        let a = fefferman_density(&domain, &p)?;
        let b = fefferman_density_leviframe(&domain, &p)?;
        println!("levi eigenvalues {:?}  density {a:.12}  levi-frame {b:.12}", levi.eigenvalues());
    }
    Ok(())
}
