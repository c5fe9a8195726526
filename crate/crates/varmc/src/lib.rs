//! Variational Monte Carlo for the bosonic SU(N) two-matrix model.
//!
//! The wave function is real and positive, `psi = sqrt(p)`, with `p` an
//! autoregressive product of Gaussians whose location and log-scale come
//! from per-coordinate `affine-tanh-affine-tanh-affine` networks.

mod ansatz;
mod energy;
mod model;
mod singlet;
mod tape;
mod train;

use thiserror::Error;

pub use ansatz::{AutoregressiveAnsatz, Derivatives};
pub use energy::{energy_and_grad, gauge_casimir_estimate, local_energy, EnergyGrad, GradientMode};
pub use model::CoordinateModel;
pub use singlet::{gauge_rotate, haar_su_n, singlet_expectation, singlet_expectation_with, SingletEstimate};
pub use tape::{Num, Tape, Var};
pub use train::{train, write_history_csv, HistoryRow, Optimizer, TrainConfig};

#[derive(Debug, Error)]
pub enum VarmcError {
    #[error("non-finite value in {0}")]
    NonFiniteOutput(&'static str),
    #[error("training diverged at step {0}")]
    Diverged(usize),
    #[error("singlet projection denominator {mean:e} +- {err:e} is compatible with zero")]
    DegenerateDenominator { mean: f64, err: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("bad checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Core(#[from] operator_core::CoreError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, VarmcError>;
