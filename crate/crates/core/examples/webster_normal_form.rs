//! Normal form of the tangential quadric and the volumes of its sublevel sets.

use holofloat::cr::Domain;
use holofloat::holo::{boundary_normal_form, cap_area, hermitian_cap_volume, webster_normal_form};
use holofloat::numerics::linalg::{CMatrix, C64};

fn main() -> holofloat::Result<()> {
    println!("area {{2|z|^2 + Re z^2 < 1}} = {:.10}", cap_area(2.0, C64::new(1.0, 0.0), 1.0)?);

    let lambda = CMatrix::from_rows(&[vec![C64::new(2.0, 0.0), C64::new(0.3, 0.2)], vec![C64::new(0.3, -0.2), C64::new(1.0, 0.0)]]);
    let mu = CMatrix::from_rows(&[vec![C64::new(0.4, 0.1), C64::new(0.0, 0.2)], vec![C64::new(0.0, 0.2), C64::new(-0.3, 0.0)]]);
    let nf = webster_normal_form(&lambda, &mu)?;
    println!("phi {:?}, |det T| {:.6}, cap volume at V = 1: {:.6}", nf.phi, nf.abs_det(), hermitian_cap_volume(&nf, 1.0)?);

    let domain = Domain::perturbed_ball(3, 0.2)?;
    let p = domain.boundary_point(&[0.0, 0.0, 0.0, 0.0, 1.0, 0.0])?;
    let nf = boundary_normal_form(&domain, &p)?;
    println!("perturbed ball at {:?}: phi {:?}", p, nf.phi);
    Ok(())
}
