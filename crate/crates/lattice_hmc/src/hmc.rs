use rand::Rng;

use crate::action::{forces_unchecked, Forces};
use crate::matrix::{expi, random_traceless_hermitian};
use crate::{action, LatticeError, LatticeParams, LatticeState, Mat, Result, FLAVORS};

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Integrator {
    pub step_size: f64,
    pub n_steps: usize,
}

impl Integrator {
    pub fn length(&self) -> f64 {
        self.step_size * self.n_steps as f64
    }
}

/// Conjugate momenta, traceless Hermitian like the fields they drive.
#[derive(Clone, Debug, PartialEq)]
pub struct Momenta {
    pub x: Vec<Vec<Mat>>,
    pub u: Vec<Mat>,
}

impl Momenta {
    pub fn sample<R: Rng + ?Sized>(p: &LatticeParams, rng: &mut R) -> Self {
        let x = (0..p.n_t)
            .map(|_| (0..FLAVORS).map(|_| random_traceless_hermitian(p.n, rng)).collect())
            .collect();
        let u = (0..p.n_t)
            .map(|_| {
                if p.gauged {
                    random_traceless_hermitian(p.n, rng)
                } else {
                    Mat::zeros(p.n, p.n)
                }
            })
            .collect();
        Self { x, u }
    }

    /// `1/2 sum Tr P^2`.
    pub fn kinetic(&self) -> f64 {
        let mut k = 0.0;
        for m in self.x.iter().flatten().chain(&self.u) {
            k += (m * m).trace().re;
        }
        0.5 * k
    }

    pub fn negate(&mut self) {
        for m in self.x.iter_mut().flatten().chain(self.u.iter_mut()) {
            m.neg_mut();
        }
    }

    fn kick(&mut self, f: &Forces, eps: f64) {
        for (pm, fm) in self.x.iter_mut().flatten().zip(f.x.iter().flatten()) {
            *pm -= fm.scale(eps);
        }
        for (pm, fm) in self.u.iter_mut().zip(&f.u) {
            *pm -= fm.scale(eps);
        }
    }
}

fn drift(s: &mut LatticeState, mom: &Momenta, p: &LatticeParams, eps: f64) {
    for (xm, pm) in s.x.iter_mut().flatten().zip(mom.x.iter().flatten()) {
        *xm += pm.scale(eps);
    }
    if p.gauged {
        for (u, pm) in s.u.iter_mut().zip(&mom.u) {
            *u = expi(&pm.scale(eps)) * &*u;
        }
    }
}

/// Leapfrog integration in place.
pub fn leapfrog(s: &mut LatticeState, mom: &mut Momenta, p: &LatticeParams, integ: &Integrator) {
    let eps = integ.step_size;
    let mut f = forces_unchecked(s, p);
    mom.kick(&f, 0.5 * eps);
    for step in 0..integ.n_steps {
        drift(s, mom, p, eps);
        f = forces_unchecked(s, p);
        let w = if step + 1 == integ.n_steps { 0.5 } else { 1.0 };
        mom.kick(&f, w * eps);
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trajectory {
    pub accepted: bool,
    pub delta_h: f64,
}

/// One HMC update with fresh Gaussian momenta. On rejection `s` is left
/// unchanged.
pub fn hmc_trajectory<R: Rng + ?Sized>(
    s: &mut LatticeState,
    p: &LatticeParams,
    integ: &Integrator,
    rng: &mut R,
) -> Result<Trajectory> {
    let mut mom = Momenta::sample(p, rng);
    let h0 = mom.kinetic() + action(s, p)?;
    let mut trial = s.clone();
    leapfrog(&mut trial, &mut mom, p, integ);
    trial.project();
    let h1 = mom.kinetic() + action(&trial, p)?;
    let delta_h = h1 - h0;
    if !delta_h.is_finite() || delta_h.abs() > 1e3 {
        return Err(LatticeError::IntegratorDiverged(delta_h.abs()));
    }
    let accepted = delta_h <= 0.0 || rng.random::<f64>() < (-delta_h).exp();
    if accepted {
        *s = trial;
    }
    Ok(Trajectory { accepted, delta_h })
}
