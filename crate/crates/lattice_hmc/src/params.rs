use serde::{Deserialize, Serialize};

use crate::{LatticeError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeParams {
    /// Rank of SU(N).
    pub n: usize,
    pub lambda: f64,
    pub m2: f64,
    /// Temperature `T = 1/beta`.
    pub temperature: f64,
    pub n_t: usize,
    pub gauged: bool,
}

impl LatticeParams {
    pub fn new(n: usize, lambda: f64, m2: f64, temperature: f64, n_t: usize, gauged: bool) -> Result<Self> {
        let p = Self {
            n,
            lambda,
            m2,
            temperature,
            n_t,
            gauged,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(LatticeError::InvalidParameter(format!("N = {} < 2", self.n)));
        }
        if self.n_t < 4 {
            return Err(LatticeError::InvalidParameter(format!("n_t = {} < 4", self.n_t)));
        }
        if !(self.temperature > 0.0) || !self.temperature.is_finite() {
            return Err(LatticeError::InvalidParameter("temperature must be positive".into()));
        }
        if !self.lambda.is_finite() || self.lambda < 0.0 {
            return Err(LatticeError::InvalidParameter("lambda must be non-negative".into()));
        }
        if !self.m2.is_finite() {
            return Err(LatticeError::InvalidParameter("m2 must be finite".into()));
        }
        Ok(())
    }

    pub fn beta(&self) -> f64 {
        1.0 / self.temperature
    }

    /// Lattice spacing `a = beta / n_t`.
    pub fn spacing(&self) -> f64 {
        self.beta() / self.n_t as f64
    }
}
