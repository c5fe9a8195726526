use nalgebra::DMatrix;
use operator_core::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::model::FLAVORS;
use crate::{AutoregressiveAnsatz, CoordinateModel, Result, VarmcError};

/// Haar-random SU(N): QR of a complex Ginibre matrix, phases fixed from the
/// diagonal of R, determinant divided out.
pub fn haar_su_n<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = z.qr();
    let (q, r) = (qr.q(), qr.r());
    let ph = DMatrix::from_diagonal(&r.diagonal().map(|d| d / d.norm()));
    let u = q * ph;
    let det = u.determinant();
    u * Complex64::from_polar(1.0, -det.arg() / n as f64)
}

/// Coordinates of `U X_I U^+`.
pub fn gauge_rotate(m: &CoordinateModel, x: &[f64], u: &DMatrix<Complex64>) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    for i in 0..FLAVORS {
        let o = i * m.adj;
        let mut xm = DMatrix::<Complex64>::zeros(m.n, m.n);
        for (a, t) in m.generators.iter().enumerate() {
            xm += t * Complex64::new(x[o + a], 0.0);
        }
        let r = u * xm * u.adjoint();
        for (a, t) in m.generators.iter().enumerate() {
            out[o + a] = (t * &r).trace().re;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SingletEstimate {
    pub value: f64,
    pub error: f64,
    pub denominator: f64,
    pub denominator_error: f64,
}

/// `<psi|P O|psi> / <psi|P|psi>` with `P` the Haar average over gauge
/// transformations. `observable(x)` must return `<x|O|psi>/psi(x)`.
pub fn singlet_expectation<R: Rng + ?Sized, F: Fn(&[f64]) -> Result<f64>>(
    a: &AutoregressiveAnsatz,
    m: &CoordinateModel,
    observable: F,
    n_samples: usize,
    rng: &mut R,
) -> Result<SingletEstimate> {
    singlet_expectation_with(a, m, observable, n_samples, rng, |r| haar_su_n(m.n, r))
}

/// As [`singlet_expectation`] with a caller-supplied group sampler.
pub fn singlet_expectation_with<R: Rng + ?Sized, F, G>(
    a: &AutoregressiveAnsatz,
    m: &CoordinateModel,
    observable: F,
    n_samples: usize,
    rng: &mut R,
    group: G,
) -> Result<SingletEstimate>
where
    F: Fn(&[f64]) -> Result<f64>,
    G: Fn(&mut R) -> DMatrix<Complex64>,
{
    if n_samples < 2 {
        return Err(VarmcError::InvalidConfig("need at least two samples".into()));
    }
    let xs = a.sample(n_samples, rng);
    let mut num = Vec::with_capacity(n_samples);
    let mut den = Vec::with_capacity(n_samples);
    for x in &xs {
        let u = group(rng);
        let y = gauge_rotate(m, x, &u);
        let r = (0.5 * (a.log_density(&y)? - a.log_density(x)?)).exp();
        num.push(observable(x)? * r);
        den.push(r);
    }
    let n = n_samples as f64;
    let mean = |v: &[f64]| v.iter().sum::<f64>() / n;
    let (mn, md) = (mean(&num), mean(&den));
    let cov = |p: &[f64], q: &[f64], mp: f64, mq: f64| {
        p.iter().zip(q).map(|(a, b)| (a - mp) * (b - mq)).sum::<f64>() / (n - 1.0)
    };
    let (vnn, vdd, vnd) = (cov(&num, &num, mn, mn), cov(&den, &den, md, md), cov(&num, &den, mn, md));
    let d_err = (vdd / n).sqrt();
    if md - 2.0 * d_err <= 0.0 {
        return Err(VarmcError::DegenerateDenominator { mean: md, err: d_err });
    }
    let value = mn / md;
    let var = (vnn - 2.0 * value * vnd + value * value * vdd) / (md * md * n);
    Ok(SingletEstimate {
        value,
        error: var.max(0.0).sqrt(),
        denominator: md,
        denominator_error: d_err,
    })
}
