//! Totals scale by `|det G|^{2n/(n+1)}` under a complex-linear map `G`.

use holofloat::cr::{transformation_check, Domain};
use holofloat::numerics::linalg::{CMatrix, C64};

fn main() -> holofloat::Result<()> {
    let ball = Domain::ball(2, 1.0)?;
    let stretch = CMatrix::diag(&[C64::new(2.0, 0.0), C64::new(1.0, 0.0)]);
    let (c, s) = (0.6, 0.8);
    let unitary = CMatrix::from_rows(&[
        vec![C64::new(c, 0.0), C64::new(0.0, -s)],
        vec![C64::new(0.0, -s), C64::new(c, 0.0)],
    ]);
    for (name, g) in [("diag(2,1)", stretch), ("unitary", unitary)] {
        let t = transformation_check(&ball, &g, 400_000, 3)?;
        println!("{name:>10}: ratio {:.5} ± {:.1e}, expected {:.5}", t.ratio, t.ratio_std_error, t.expected);
    }
    Ok(())
}
