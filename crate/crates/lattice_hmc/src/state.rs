use rand::Rng;

use crate::matrix::{random_traceless_hermitian, reunitarize, traceless_hermitian_part};
use crate::{LatticeError, LatticeParams, Mat, Result, FLAVORS};

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeState {
    /// `x[t][i]`: traceless Hermitian matrix of flavor `i` at site `t`.
    pub x: Vec<Vec<Mat>>,
    /// Link from site `t` to `t + 1`.
    pub u: Vec<Mat>,
}

impl LatticeState {
    /// All fields zero, links trivial.
    pub fn cold(p: &LatticeParams) -> Self {
        Self {
            x: vec![vec![Mat::zeros(p.n, p.n); FLAVORS]; p.n_t],
            u: vec![Mat::identity(p.n, p.n); p.n_t],
        }
    }

    /// Gaussian site fields of width `scale`; links stay trivial.
    pub fn random<R: Rng + ?Sized>(p: &LatticeParams, scale: f64, rng: &mut R) -> Self {
        let mut s = Self::cold(p);
        for site in &mut s.x {
            for m in site.iter_mut() {
                *m = random_traceless_hermitian(p.n, rng).scale(scale);
            }
        }
        s
    }

    pub fn n_t(&self) -> usize {
        self.x.len()
    }

    pub fn check(&self, p: &LatticeParams) -> Result<()> {
        if self.x.len() != p.n_t || self.u.len() != p.n_t {
            return Err(LatticeError::InvariantViolation(format!(
                "state has {} sites, params say {}",
                self.x.len(),
                p.n_t
            )));
        }
        let id = Mat::identity(p.n, p.n);
        for (t, site) in self.x.iter().enumerate() {
            if site.len() != FLAVORS {
                return Err(LatticeError::InvariantViolation(format!("site {t}: wrong flavor count")));
            }
            for m in site {
                if m.nrows() != p.n || m.ncols() != p.n {
                    return Err(LatticeError::InvariantViolation(format!("site {t}: wrong matrix size")));
                }
                if (m - m.adjoint()).norm() > 1e-12 * m.norm().max(1.0) {
                    return Err(LatticeError::InvariantViolation(format!("site {t}: X not Hermitian")));
                }
                if m.trace().norm() > 1e-12 * m.norm().max(1.0) {
                    return Err(LatticeError::InvariantViolation(format!("site {t}: X not traceless")));
                }
            }
            let u = &self.u[t];
            if (u.adjoint() * u - &id).norm() > 1e-10 || (u.determinant() - 1.0).norm() > 1e-10 {
                return Err(LatticeError::InvariantViolation(format!("link {t} not in SU(N)")));
            }
        }
        Ok(())
    }

    /// Removes roundoff drift from the group and algebra constraints.
    pub fn project(&mut self) {
        for site in &mut self.x {
            for m in site.iter_mut() {
                *m = traceless_hermitian_part(m);
            }
        }
        for u in &mut self.u {
            *u = reunitarize(u);
        }
    }

    /// `X_t -> W_t X_t W_t^+`, `U_t -> W_t U_t W_{t+1}^+`.
    pub fn gauge_transform(&self, w: &[Mat]) -> Self {
        let n_t = self.n_t();
        let x = self
            .x
            .iter()
            .zip(w)
            .map(|(site, g)| site.iter().map(|m| g * m * g.adjoint()).collect())
            .collect();
        let u = (0..n_t)
            .map(|t| &w[t] * &self.u[t] * w[(t + 1) % n_t].adjoint())
            .collect();
        Self { x, u }
    }

    /// `sqrt(sum Tr dX^2 + sum ||dU||^2)`.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for (a, b) in self.x.iter().zip(&other.x) {
            for (p, q) in a.iter().zip(b) {
                s += (p - q).norm_squared();
            }
        }
        for (a, b) in self.u.iter().zip(&other.u) {
            s += (a - b).norm_squared();
        }
        s.sqrt()
    }
}
