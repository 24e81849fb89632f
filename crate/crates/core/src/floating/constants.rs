//! Normalizing constants of the floating-body limits.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::numerics::special::{gamma_fn, unit_ball_volume};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `(2π)^{(n-1)/(n+1)} / Γ((n+1)/2)^{2/(n+1)}`
    Printed,
    /// `2 (v_{n-1}/(n+1))^{2/(n+1)}`, the value forced by the exact ball wet volume.
    Oracle,
}

impl Convention {
    pub fn label(self) -> &'static str {
        match self {
            Convention::Printed => "c_n(printed)",
            Convention::Oracle => "c_n(oracle)",
        }
    }
}

pub fn c_n_constant(n: usize, convention: Convention) -> Result<f64> {
    if n < 2 {
        return invalid("c_n is defined for n >= 2");
    }
    let m = n as f64;
    Ok(match convention {
        Convention::Printed => (2.0 * PI).powf((m - 1.0) / (m + 1.0)) / gamma_fn((m + 1.0) / 2.0)?.powf(2.0 / (m + 1.0)),
        Convention::Oracle => 2.0 * (unit_ball_volume(n - 1) / (m + 1.0)).powf(2.0 / (m + 1.0)),
    })
}

/// `c_n(printed) / c_n(oracle) = ((n+1)/2)^{2/(n+1)}`.
pub fn convention_ratio(n: usize) -> f64 {
    let m = n as f64;
    ((m + 1.0) / 2.0).powf(2.0 / (m + 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert!((c_n_constant(2, Convention::Printed).unwrap() - 2.0).abs() < 1e-12);
        assert!((c_n_constant(3, Convention::Oracle).unwrap() - PI.sqrt()).abs() < 1e-12);
        let c2 = 2.0 * (2.0f64 / 3.0).powf(2.0 / 3.0);
        assert!((c_n_constant(2, Convention::Oracle).unwrap() - c2).abs() < 1e-12);
        assert!((c2 - 1.5262857).abs() < 1e-7);
        assert!(c_n_constant(1, Convention::Oracle).is_err());
    }

    #[test]
    fn ratio_between_conventions() {
        for n in 2..8 {
            let r = c_n_constant(n, Convention::Printed).unwrap() / c_n_constant(n, Convention::Oracle).unwrap();
            assert!((r - convention_ratio(n)).abs() < 1e-12);
        }
    }
}
