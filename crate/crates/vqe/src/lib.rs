//! Variational quantum eigensolver on a dense statevector.

mod ansatz;
mod objective;
mod optimize;
mod restarts;

use thiserror::Error;

pub use ansatz::{AnsatzForm, AnsatzSpec, Gate, MAX_QUBITS};
pub use objective::{energy, Objective};
pub use optimize::{minimize, nelder_mead, quasi_newton, Gradient, MinimizeResult, Optimizer};
pub use restarts::{multi_start, RunRecord, RunStats};

#[derive(Debug, Error)]
pub enum VqeError {
    #[error("expected {expected} parameters, got {got}")]
    ParameterCountMismatch { expected: usize, got: usize },
    #[error("{0} qubits exceed the statevector limit of {MAX_QUBITS}")]
    TooManyQubits(usize),
    #[error("Hamiltonian acts on {hamiltonian} qubits but the ansatz has {ansatz}")]
    QubitMismatch { hamiltonian: usize, ansatz: usize },
    #[error("objective returned a non-finite value")]
    ObjectiveNotFinite,
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error(transparent)]
    Qubit(#[from] qubit_map::QubitError),
}

pub type Result<T> = std::result::Result<T, VqeError>;
