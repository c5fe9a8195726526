use num_complex::Complex64;

use crate::matrix::traceless_hermitian_part;
use crate::{LatticeParams, LatticeState, Mat, Result, FLAVORS};

fn comm(a: &Mat, b: &Mat) -> Mat {
    a * b - b * a
}

/// `V_t = U_t U_{t+1}`.
fn double_links(s: &LatticeState) -> Vec<Mat> {
    let n_t = s.n_t();
    (0..n_t).map(|t| &s.u[t] * &s.u[(t + 1) % n_t]).collect()
}

/// `a (D X)_{t,i}` for every site and flavor.
fn stencil(s: &LatticeState, v: &[Mat]) -> Vec<Vec<Mat>> {
    let n_t = s.n_t();
    (0..n_t)
        .map(|t| {
            let (t1, t2) = ((t + 1) % n_t, (t + 2) % n_t);
            (0..FLAVORS)
                .map(|i| {
                    let far = &v[t] * &s.x[t2][i] * v[t].adjoint();
                    let near = &s.u[t] * &s.x[t1][i] * s.u[t].adjoint();
                    far.scale(-0.5) + near.scale(2.0) - s.x[t][i].scale(1.5)
                })
                .collect()
        })
        .collect()
}

fn tr2(a: &Mat) -> f64 {
    (a * a).trace().re
}

/// `sum_{i,j} Tr [X_i, X_j]^2` at one site.
fn commutator_square(site: &[Mat]) -> f64 {
    let mut s = 0.0;
    for i in 0..site.len() {
        for j in i + 1..site.len() {
            s += 2.0 * tr2(&comm(&site[i], &site[j]));
        }
    }
    s
}

pub fn action(s: &LatticeState, p: &LatticeParams) -> Result<f64> {
    s.check(p)?;
    let a = p.spacing();
    let nn = p.n as f64;
    let y = stencil(s, &double_links(s));
    let mut kin = 0.0;
    let mut pot = 0.0;
    for t in 0..p.n_t {
        for i in 0..FLAVORS {
            kin += tr2(&y[t][i]);
            pot += 0.5 * p.m2 * tr2(&s.x[t][i]);
        }
        pot -= 0.25 * p.lambda * commutator_square(&s.x[t]);
    }
    Ok(nn * (kin / (2.0 * a) + a * pot))
}

/// Gradients of the action. `x[t][i]` satisfies `dS = sum Tr(F dX)`; `u[t]`
/// is the derivative along `U_t -> exp(i w A) U_t`, i.e. `dS/dw = Tr(F A)`.
#[derive(Clone, Debug)]
pub struct Forces {
    pub x: Vec<Vec<Mat>>,
    pub u: Vec<Mat>,
}

pub fn forces(s: &LatticeState, p: &LatticeParams) -> Result<Forces> {
    s.check(p)?;
    Ok(forces_unchecked(s, p))
}

pub(crate) fn forces_unchecked(s: &LatticeState, p: &LatticeParams) -> Forces {
    let n_t = p.n_t;
    let a = p.spacing();
    let nn = p.n as f64;
    let v = double_links(s);
    let y = stencil(s, &v);
    let i_unit = Complex64::new(0.0, 1.0);
    let mut fx = Vec::with_capacity(n_t);
    for t in 0..n_t {
        let (tm1, tm2) = ((t + n_t - 1) % n_t, (t + n_t - 2) % n_t);
        let mut site = Vec::with_capacity(FLAVORS);
        for i in 0..FLAVORS {
            let kin = (v[tm2].adjoint() * &y[tm2][i] * &v[tm2]).scale(-0.5)
                + (s.u[tm1].adjoint() * &y[tm1][i] * &s.u[tm1]).scale(2.0)
                - y[t][i].scale(1.5);
            let mut quartic = Mat::zeros(p.n, p.n);
            for j in 0..FLAVORS {
                if j != i {
                    quartic += comm(&s.x[t][j], &comm(&s.x[t][i], &s.x[t][j]));
                }
            }
            let pot = s.x[t][i].scale(p.m2) - quartic.scale(p.lambda);
            site.push(traceless_hermitian_part(&(kin.scale(nn / a) + pot.scale(nn * a))));
        }
        fx.push(site);
    }
    let fu = if p.gauged {
        (0..n_t)
            .map(|t| {
                let tm1 = (t + n_t - 1) % n_t;
                let t1 = (t + 1) % n_t;
                let mut f = Mat::zeros(p.n, p.n);
                for i in 0..FLAVORS {
                    let z = &y[t][i] + s.x[t][i].scale(1.5);
                    f += comm(&z, &y[t][i]) * i_unit;
                    let q = &v[tm1] * &s.x[t1][i] * v[tm1].adjoint();
                    let back = s.u[tm1].adjoint() * comm(&q, &y[tm1][i]) * &s.u[tm1];
                    f -= back * (0.5 * i_unit);
                }
                traceless_hermitian_part(&f.scale(nn / a))
            })
            .collect()
    } else {
        vec![Mat::zeros(p.n, p.n); n_t]
    };
    Forces { x: fx, u: fu }
}

/// `(N/n_t) sum_t (m^2 Tr X_i^2 - 3 lambda/4 sum_{i,j} Tr [X_i, X_j]^2)`.
pub fn virial_energy(s: &LatticeState, p: &LatticeParams) -> Result<f64> {
    s.check(p)?;
    Ok(virial_unchecked(s, p))
}

pub(crate) fn virial_unchecked(s: &LatticeState, p: &LatticeParams) -> f64 {
    let mut e = 0.0;
    for site in &s.x {
        for m in site {
            e += p.m2 * tr2(m);
        }
        e -= 0.75 * p.lambda * commutator_square(site);
    }
    p.n as f64 * e / p.n_t as f64
}

/// Exact expectation of the virial estimator at `lambda = 0` without gauge
/// links, on the same finite lattice. Infinite when `m^2 <= 0`.
pub fn free_virial_energy(p: &LatticeParams) -> f64 {
    if p.m2 <= 0.0 {
        return f64::INFINITY;
    }
    let a = p.spacing();
    let modes = (FLAVORS * (p.n * p.n - 1)) as f64;
    let sum: f64 = (0..p.n_t)
        .map(|k| {
            let q = 2.0 * std::f64::consts::PI * k as f64 / p.n_t as f64;
            let z = Complex64::from_polar(1.0, q);
            let s = z * z * -0.5 + z * 2.0 - 1.5;
            a / (s.norm_sqr() + a * a * p.m2)
        })
        .sum();
    modes * p.m2 * sum / p.n_t as f64
}
