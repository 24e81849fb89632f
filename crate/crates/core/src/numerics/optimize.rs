//! Derivative-free local minimization (Nelder–Mead).

#[derive(Debug, Clone, Copy)]
pub struct NelderMeadOptions {
    /// Edge length of the initial simplex.
    pub step: f64,
    /// Stop when the spread of simplex values falls below `f_tol`.
    pub f_tol: f64,
    /// Stop when the simplex diameter falls below `x_tol`.
    pub x_tol: f64,
    pub max_evals: usize,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        NelderMeadOptions { step: 0.1, f_tol: 1e-12, x_tol: 1e-10, max_evals: 2000 }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evals: usize,
}

/// Standard Nelder–Mead (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], opts: NelderMeadOptions) -> Minimum {
    let d = x0.len();
    let mut evals = 0;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    let v0 = eval(x0, &mut evals);
    simplex.push((x0.to_vec(), v0));
    for i in 0..d {
        let mut x = x0.to_vec();
        x[i] += opts.step;
        let v = eval(&x, &mut evals);
        simplex.push((x, v));
    }
    let mut centroid = vec![0.0; d];
    let mut trial = vec![0.0; d];
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[d].1 - simplex[0].1;
        let diameter = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if evals >= opts.max_evals || (spread.abs() <= opts.f_tol && diameter <= opts.x_tol.max(opts.f_tol)) || diameter <= opts.x_tol {
            break;
        }
        centroid.iter_mut().for_each(|c| *c = 0.0);
        for (x, _) in &simplex[..d] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / d as f64;
            }
        }
        let worst = simplex[d].clone();
        let point = |coef: f64, out: &mut Vec<f64>| {
            for k in 0..d {
                out[k] = centroid[k] + coef * (worst.0[k] - centroid[k]);
            }
        };
        point(-1.0, &mut trial);
        let fr = eval(&trial, &mut evals);
        if fr < simplex[0].1 {
            let reflected = trial.clone();
            point(-2.0, &mut trial);
            let fe = eval(&trial, &mut evals);
            simplex[d] = if fe < fr { (trial.clone(), fe) } else { (reflected, fr) };
        } else if fr < simplex[d - 1].1 {
            simplex[d] = (trial.clone(), fr);
        } else {
            let coef = if fr < worst.1 { -0.5 } else { 0.5 };
            point(coef, &mut trial);
            let fc = eval(&trial, &mut evals);
            if fc < worst.1.min(fr) {
                simplex[d] = (trial.clone(), fc);
            } else {
                let best = simplex[0].0.clone();
                for item in simplex.iter_mut().skip(1) {
                    for k in 0..d {
                        item.0[k] = best[k] + 0.5 * (item.0[k] - best[k]);
                    }
                    item.1 = eval(&item.0, &mut evals);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value, evals }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let m = nelder_mead(|x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 0.5).powi(2), &[0.0, 0.0], NelderMeadOptions::default());
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] + 0.5).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn one_dimensional() {
        let m = nelder_mead(|x| (x[0] - 0.3).abs(), &[1.0], NelderMeadOptions::default());
        assert!((m.x[0] - 0.3).abs() < 1e-9);
    }

    #[test]
    fn rosenbrock() {
        let opts = NelderMeadOptions { step: 0.5, f_tol: 1e-16, x_tol: 1e-12, max_evals: 5000 };
        let m = nelder_mead(|x| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2), &[-1.2, 1.0], opts);
        assert!((m.x[0] - 1.0).abs() < 1e-5 && (m.x[1] - 1.0).abs() < 1e-5, "{m:?}");
    }
}
