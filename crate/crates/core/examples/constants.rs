//! Normalizing constants: the two conventions for the convex floating body
//! and the holomorphic constant `C_n`.
//!
//! ```bash
//! cargo run --example constants
//! ```

use holofloat::floating::{c_n_constant, convention_ratio, Convention};
use holofloat::holo::holo_constant;

fn main() -> holofloat::Result<()> {
    println!("{:>2} {:>12} {:>12} {:>8} {:>10}", "n", "printed", "oracle", "ratio", "C_n");
    for n in 1..=4 {
        let cell = |c: Convention| c_n_constant(n, c).map(|v| format!("{v:12.8}")).unwrap_or(format!("{:>12}", "-"));
        let ratio = if n >= 2 { format!("{:8.5}", convention_ratio(n)) } else { format!("{:>8}", "-") };
        println!("{n:>2} {} {} {ratio} {:10.7}", cell(Convention::Printed), cell(Convention::Oracle), holo_constant(n)?);
    }
    Ok(())
}
