//! Pauli-string representation of operators on `n` qubits.
//!
//! Qubit `q` is the `q`-th character of a label and the `(n - 1 - q)`-th bit
//! of a statevector index, so labels read in Kronecker-product order. A boson
//! site with cutoff `2^K` occupies `K` consecutive qubits holding the binary
//! digits `b_0, b_1, ..., b_{K-1}` of the occupation number, `b_0` first.
//! Each fermion takes one qubit holding its occupation.

mod layout;
mod pauli;
mod text;

use operator_core::CoreError;
use thiserror::Error;

pub use layout::{encode_fock, fock_to_qubit_permutation, qubit_count, to_qubit_order, permute_state};
pub use pauli::{decode, encode, pauli_expectation, PauliString, PauliSum};
pub use text::{read_pauli_sum, write_pauli_sum};

#[derive(Debug, Error)]
pub enum QubitError {
    #[error("dimension {0} is not a power of two")]
    NonPowerOfTwoDimension(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("{0} qubits exceed the supported maximum of 30")]
    TooManyQubits(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
}

pub type Result<T> = std::result::Result<T, QubitError>;
