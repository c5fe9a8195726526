use std::io::Write;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::{FitDataset, FitError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FitResult {
    /// Intercept `E`.
    pub e: f64,
    pub sigma_e: f64,
    /// `E, a_1, ..., a_{n_p}`.
    pub coefficients: Vec<f64>,
    pub chi2: f64,
    /// `chi2 / (n_points - n_p - 1)`.
    pub chi2_dof: f64,
    /// `chi2 / n_points`, the normalization used when flat priors are counted
    /// as data.
    pub chi2_per_point: f64,
    pub n_points: usize,
    pub n_p: usize,
    pub cut: f64,
}

/// Weighted polynomial fit of `y(x)` of order `n_p`.
pub fn wls(x: &[f64], y: &[f64], sigma: &[f64], n_p: usize) -> Result<FitResult> {
    let n = x.len();
    let k = n_p + 1;
    if n < n_p + 2 {
        return Err(FitError::InsufficientData {
            have: n,
            need: n_p + 2,
        });
    }
    let a = DMatrix::from_fn(n, k, |i, j| x[i].powi(j as i32) / sigma[i]);
    let b = DVector::from_fn(n, |i, _| y[i] / sigma[i]);
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-12 * smax) {
        return Err(FitError::SingularDesign(smax / smin));
    }
    let u = svd.u.as_ref().unwrap();
    let vt = svd.v_t.as_ref().unwrap();
    let inv_s = svd.singular_values.map(|s| 1.0 / s);
    let c = vt.transpose() * DMatrix::from_diagonal(&inv_s) * u.transpose() * &b;
    let cov = vt.transpose() * DMatrix::from_diagonal(&inv_s.map(|v| v * v)) * vt;
    let r = &a * &c - &b;
    let chi2 = r.norm_squared();
    Ok(FitResult {
        e: c[0],
        sigma_e: cov[(0, 0)].sqrt(),
        coefficients: c.iter().cloned().collect(),
        chi2,
        chi2_dof: chi2 / (n - k) as f64,
        chi2_per_point: chi2 / n as f64,
        n_points: n,
        n_p,
        cut: f64::NAN,
    })
}

/// Fit in `a = 1/(T n_t)` over all records with `a <= a_max`.
pub fn wls_polyfit(d: &FitDataset, n_p: usize, a_max: f64) -> Result<FitResult> {
    let tol = 1e-12 * a_max.abs().max(1.0);
    let sel: Vec<_> = d.records.iter().filter(|r| r.spacing() <= a_max + tol).collect();
    let x: Vec<f64> = sel.iter().map(|r| r.spacing()).collect();
    let y: Vec<f64> = sel.iter().map(|r| r.e).collect();
    let s: Vec<f64> = sel.iter().map(|r| r.sigma).collect();
    let mut f = wls(&x, &y, &s, n_p)?;
    f.cut = a_max;
    Ok(f)
}

#[derive(Debug)]
pub struct ScanCell {
    pub a_max: f64,
    pub n_p: usize,
    pub result: Result<FitResult>,
}

/// One fit per `(a_max, n_p)`, ordered by `a_max` then `n_p`.
pub fn systematic_scan(d: &FitDataset, orders: &[usize], a_max_grid: &[f64]) -> Result<Vec<ScanCell>> {
    if orders.is_empty() || a_max_grid.is_empty() {
        return Err(FitError::InvalidRecord("empty scan grid".into()));
    }
    let mut out = Vec::with_capacity(orders.len() * a_max_grid.len());
    for &a_max in a_max_grid {
        for &n_p in orders {
            out.push(ScanCell {
                a_max,
                n_p,
                result: wls_polyfit(d, n_p, a_max),
            });
        }
    }
    Ok(out)
}

/// Report CSV: `a_max,n_p,E,sigma_E,chi2_dof`; failed cells leave the fit
/// columns empty.
pub fn write_scan_report<W: Write>(cells: &[ScanCell], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(["a_max", "n_p", "E", "sigma_E", "chi2_dof"])?;
    for c in cells {
        let (e, s, x) = match &c.result {
            Ok(f) => (f.e.to_string(), f.sigma_e.to_string(), f.chi2_dof.to_string()),
            Err(_) => Default::default(),
        };
        wr.write_record([c.a_max.to_string(), c.n_p.to_string(), e, s, x])?;
    }
    wr.flush()?;
    Ok(())
}

#[derive(Debug)]
pub struct PerTemperature {
    pub t: f64,
    pub result: Result<FitResult>,
}

/// Independent fit at each temperature in powers of `1/n_t`, keeping
/// `n_t > n_t_cut`.
pub fn per_temperature_fit(d: &FitDataset, n_p: usize, n_t_cut: usize) -> Vec<PerTemperature> {
    d.temperatures()
        .into_iter()
        .map(|t| {
            let sel: Vec<_> = d
                .records
                .iter()
                .filter(|r| r.t == t && r.n_t > n_t_cut)
                .collect();
            let x: Vec<f64> = sel.iter().map(|r| 1.0 / r.n_t as f64).collect();
            let y: Vec<f64> = sel.iter().map(|r| r.e).collect();
            let s: Vec<f64> = sel.iter().map(|r| r.sigma).collect();
            let result = wls(&x, &y, &s, n_p).map(|mut f| {
                f.cut = n_t_cut as f64;
                f
            });
            PerTemperature { t, result }
        })
        .collect()
}
