//! Euclidean lattice simulation of the bosonic two-matrix model.
//!
//! Fields live on a periodic circle of `n_t` sites with spacing
//! `a = 1/(T n_t)`. The kinetic term uses the improved covariant stencil
//! `a (D X)_t = -1/2 V_t X_{t+2} V_t^+ + 2 U_t X_{t+1} U_t^+ - 3/2 X_t`
//! with `V_t = U_t U_{t+1}`. Configurations are sampled by HMC and the
//! energy is measured with the virial estimator.

mod action;
mod autocorr;
mod chain;
mod hmc;
mod matrix;
mod params;
mod state;

use thiserror::Error;

pub use action::{action, forces, free_virial_energy, virial_energy, Forces};
pub use autocorr::{integrated_autocorrelation, Autocorrelation, ObservableSeries};
pub use chain::{
    load_checkpoint, run_chain, run_chain_from, save_checkpoint, write_chain_csv, ChainOutput, ChainRecord,
    Schedule,
};
pub use hmc::{hmc_trajectory, leapfrog, Integrator, Momenta, Trajectory};
pub use matrix::{
    expi, random_su_n, random_traceless_hermitian, reunitarize, traceless_hermitian_part, Mat,
};
pub use params::LatticeParams;
pub use state::LatticeState;

/// Number of matrices in the model.
pub const FLAVORS: usize = 2;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("state invariant violated: {0}")]
    InvariantViolation(String),
    #[error("integrator diverged (|dH| = {0:e})")]
    IntegratorDiverged(f64),
    #[error("no measurements recorded")]
    NoMeasurements,
    #[error("series of length {0} is too short (need 100)")]
    SeriesTooShort(usize),
    #[error("bad checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, LatticeError>;
