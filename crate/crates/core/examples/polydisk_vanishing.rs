//! On the polydisk the normalized wet volume of the one-variable peak
//! family decays to zero.

use holofloat::cr::Domain;
use holofloat::holo::{holo_limit_study, HoloStudyOptions};

fn main() -> holofloat::Result<()> {
    let domain = Domain::polydisk(2)?;
    let grid = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7];
    let opts = HoloStudyOptions { family_size: 256, ..Default::default() };
    let s = holo_limit_study(&domain, &grid, 400_000, 2, &opts)?;
    for (d, st) in s.report.delta_grid.iter().zip(&s.report.statistic) {
        println!("delta {d:e}: statistic {:.5} ± {:.1e}", st.value, st.std_error);
    }
    println!("last / first = {:.4}", s.report.tail_ratio());
    Ok(())
}
