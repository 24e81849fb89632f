//! On a tube over a convex curve the Fefferman density equals
//! `κ^{1/(n+1)}` and ignores the imaginary part.

use holofloat::convex::ConvexBody;
use holofloat::cr::tube_density_check;

fn main() -> holofloat::Result<()> {
    let ellipse = ConvexBody::ellipsoid(&[2.0, 1.0])?;
    for k in 0..6 {
        let t = std::f64::consts::PI * k as f64 / 10.0;
        let x = [2.0 * t.cos(), t.sin()];
        let c = tube_density_check(&ellipse, &x, &[0.0, 0.0], &[3.0, -1.0])?;
        println!(
            "t = {t:.3}  density {:.10}  shifted {:.10}  κ^(1/3) {:.10}  ratio {:.12}",
            c.density,
            c.density_shifted,
            c.reference,
            c.ratio()
        );
    }
    Ok(())
}
