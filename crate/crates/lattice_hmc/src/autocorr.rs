use serde::{Deserialize, Serialize};

use crate::{LatticeError, Result};

/// Window factor of the self-consistent truncation.
const WINDOW_C: f64 = 6.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Autocorrelation {
    pub tau_int: f64,
    pub window: usize,
    /// Statistical error of `tau_int` (Madras-Sokal estimate).
    pub tau_error: f64,
}

/// Integrated autocorrelation time with the self-consistent window
/// `W >= 6 tau_int(W)`.
pub fn integrated_autocorrelation(x: &[f64]) -> Result<Autocorrelation> {
    let n = x.len();
    if n < 100 {
        return Err(LatticeError::SeriesTooShort(n));
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    let d: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let c0 = d.iter().map(|v| v * v).sum::<f64>() / n as f64;
    if c0 == 0.0 {
        return Ok(Autocorrelation {
            tau_int: 0.5,
            window: 0,
            tau_error: 0.0,
        });
    }
    let mut tau = 0.5;
    let mut window = n - 1;
    for t in 1..n {
        let ct = d[..n - t].iter().zip(&d[t..]).map(|(a, b)| a * b).sum::<f64>() / (n - t) as f64;
        tau += ct / c0;
        if t as f64 >= WINDOW_C * tau {
            window = t;
            break;
        }
    }
    let tau = tau.max(0.5);
    Ok(Autocorrelation {
        tau_int: tau,
        window,
        tau_error: tau * (2.0 * (2 * window + 1) as f64 / n as f64).sqrt(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObservableSeries {
    pub values: Vec<f64>,
    /// MDTU between entries.
    pub stride: f64,
    pub mean: f64,
    /// In units of entries; 0.5 when the series is too short to estimate.
    pub tau_int: f64,
    /// `None` when fewer than 100 entries.
    pub window: Option<usize>,
    /// `sqrt(2 tau_int var / n)`.
    pub error: f64,
}

impl ObservableSeries {
    pub fn new(values: Vec<f64>, stride: f64) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(LatticeError::NoMeasurements);
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let var = if n > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        let (tau_int, window) = match integrated_autocorrelation(&values) {
            Ok(a) => (a.tau_int, Some(a.window)),
            Err(LatticeError::SeriesTooShort(_)) => (0.5, None),
            Err(e) => return Err(e),
        };
        Ok(Self {
            error: (2.0 * tau_int * var / n as f64).sqrt(),
            values,
            stride,
            mean,
            tau_int,
            window,
        })
    }
}
