//! Gamma-family special functions and unit-ball constants.

use std::f64::consts::PI;

use crate::error::{invalid, Result};

/// Euler's gamma function for `x > 0`.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return invalid(format!("gamma_fn needs a finite positive argument, got {x}"));
    }
    Ok(statrs::function::gamma::gamma(x))
}

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Regularized incomplete beta function `I_x(a, b)`.
pub fn beta_reg(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    statrs::function::beta::beta_reg(a, b, x)
}

/// Volume of the unit ball in R^n (`n = 0` gives 1).
pub fn unit_ball_volume(n: usize) -> f64 {
    // V_n = 2π/n · V_{n-2}
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * unit_ball_volume(n - 2),
    }
}

/// Surface area of the unit sphere `S^{n-1}` in R^n.
pub fn unit_sphere_area(n: usize) -> f64 {
    n as f64 * unit_ball_volume(n)
}

/// Volume of the cap `{x in B^n : x_1 >= t}` of the unit ball.
pub fn ball_cap_volume(n: usize, t: f64) -> f64 {
    let full = unit_ball_volume(n);
    if t >= 1.0 {
        return 0.0;
    }
    if t <= -1.0 {
        return full;
    }
    if n == 1 {
        return 1.0 - t;
    }
    let half = 0.5 * full * beta_reg(0.5 * (n as f64 + 1.0), 0.5, 1.0 - t * t);
    if t >= 0.0 {
        half
    } else {
        full - half
    }
}
