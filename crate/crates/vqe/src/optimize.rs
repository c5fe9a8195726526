use serde::{Deserialize, Serialize};

use crate::{Objective, Result, VqeError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gradient {
    /// Central differences, step 1e-6.
    FiniteDifference,
    /// Exact reverse-mode gradient.
    Adjoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Optimizer {
    NelderMead { initial_step: f64 },
    QuasiNewton { gradient: Gradient },
}

impl Optimizer {
    pub fn nelder_mead() -> Self {
        Optimizer::NelderMead { initial_step: 0.5 }
    }

    pub fn quasi_newton_fd() -> Self {
        Optimizer::QuasiNewton {
            gradient: Gradient::FiniteDifference,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinimizeResult {
    pub theta: Vec<f64>,
    pub value: f64,
    /// Best value after each iteration.
    pub trace: Vec<f64>,
}

fn finite(v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(VqeError::ObjectiveNotFinite)
    }
}

/// Nelder-Mead with reflection 1, expansion 2, contraction 0.5, shrink 0.5.
pub fn nelder_mead<F: FnMut(&[f64]) -> Result<f64>>(
    mut f: F,
    x0: &[f64],
    initial_step: f64,
    max_iters: usize,
) -> Result<MinimizeResult> {
    if max_iters == 0 {
        return Err(VqeError::InvalidRequest("max_iters must be at least 1".into()));
    }
    let n = x0.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), finite(f(x0)?)?));
    for k in 0..n {
        let mut x = x0.to_vec();
        x[k] += initial_step;
        let v = finite(f(&x)?)?;
        simplex.push((x, v));
    }
    let mut trace = Vec::with_capacity(max_iters);
    let point = |c: &[f64], d: &[f64], t: f64| -> Vec<f64> {
        c.iter().zip(d).map(|(a, b)| a + t * (b - a)).collect()
    };
    for _ in 0..max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].1;
        let worst = simplex[n].1;
        trace.push(best);
        let spread = simplex
            .iter()
            .skip(1)
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if (worst - best).abs() <= 1e-12 * best.abs().max(1e-12) && spread <= 1e-10 {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let xr = point(&centroid, &simplex[n].0, -1.0);
        let fr = finite(f(&xr)?)?;
        if fr < best {
            let xe = point(&centroid, &simplex[n].0, -2.0);
            let fe = finite(f(&xe)?)?;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst {
                let x = point(&centroid, &xr, 0.5);
                let v = finite(f(&x)?)?;
                (x, v)
            } else {
                let x = point(&centroid, &simplex[n].0, 0.5);
                let v = finite(f(&x)?)?;
                (x, v)
            };
            if fc < fr.min(worst) {
                simplex[n] = (xc, fc);
            } else {
                let x0 = simplex[0].0.clone();
                for s in simplex.iter_mut().skip(1) {
                    s.0 = point(&x0, &s.0, 0.5);
                    s.1 = finite(f(&s.0)?)?;
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (theta, value) = simplex.swap_remove(0);
    Ok(MinimizeResult {
        theta,
        value,
        trace,
    })
}

/// BFGS with a backtracking Armijo line search.
pub fn quasi_newton<F: FnMut(&[f64]) -> Result<(f64, Vec<f64>)>>(
    mut fg: F,
    x0: &[f64],
    max_iters: usize,
) -> Result<MinimizeResult> {
    if max_iters == 0 {
        return Err(VqeError::InvalidRequest("max_iters must be at least 1".into()));
    }
    let n = x0.len();
    let mut x = x0.to_vec();
    let (mut fx, mut g) = fg(&x)?;
    finite(fx)?;
    let mut hinv = identity(n);
    let mut trace = Vec::with_capacity(max_iters);
    for _ in 0..max_iters {
        trace.push(fx);
        let gnorm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if gnorm < 1e-9 {
            break;
        }
        let mut d: Vec<f64> = (0..n).map(|i| -(0..n).map(|j| hinv[i][j] * g[j]).sum::<f64>()).collect();
        let mut slope: f64 = d.iter().zip(&g).map(|(a, b)| a * b).sum();
        if slope >= 0.0 {
            hinv = identity(n);
            d = g.iter().map(|v| -v).collect();
            slope = -gnorm * gnorm;
        }
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let xn: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + t * b).collect();
            let (fn_, gn) = fg(&xn)?;
            if fn_.is_finite() && fn_ <= fx + 1e-4 * t * slope {
                accepted = Some((xn, fn_, gn));
                break;
            }
            t *= 0.5;
        }
        let Some((xn, fn_, gn)) = accepted else {
            break;
        };
        let s: Vec<f64> = xn.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
        if sy > 1e-14 {
            let hy: Vec<f64> = (0..n).map(|i| (0..n).map(|j| hinv[i][j] * y[j]).sum()).collect();
            let yhy: f64 = y.iter().zip(&hy).map(|(a, b)| a * b).sum();
            let rho = 1.0 / sy;
            for i in 0..n {
                for j in 0..n {
                    hinv[i][j] += (1.0 + rho * yhy) * rho * s[i] * s[j]
                        - rho * (hy[i] * s[j] + s[i] * hy[j]);
                }
            }
        }
        let progress = fx - fn_;
        x = xn;
        fx = fn_;
        g = gn;
        if progress.abs() <= 1e-15 * fx.abs().max(1.0) {
            trace.push(fx);
            break;
        }
    }
    trace.truncate(max_iters);
    Ok(MinimizeResult {
        theta: x,
        value: fx,
        trace,
    })
}

fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Minimizes the VQE energy from `theta0`.
pub fn minimize(obj: &Objective, optimizer: Optimizer, theta0: &[f64], max_iters: usize) -> Result<MinimizeResult> {
    obj.spec().check(theta0)?;
    match optimizer {
        Optimizer::NelderMead { initial_step } => {
            nelder_mead(|t| obj.energy(t), theta0, initial_step, max_iters)
        }
        Optimizer::QuasiNewton { gradient } => quasi_newton(
            |t| match gradient {
                Gradient::Adjoint => obj.gradient(t),
                Gradient::FiniteDifference => Ok((obj.energy(t)?, obj.fd_gradient(t, 1e-6)?)),
            },
            theta0,
            max_iters,
        ),
    }
}
