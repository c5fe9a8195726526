//! Building blocks for truncated matrix quantum mechanics.
//!
//! Everything here lives on a tensor product of truncated bosonic Fock
//! spaces (dimension `cutoff` each) followed by two-level fermion modes.
//! Site 0 is the most significant Kronecker factor.
//!
//! Two operator representations are provided:
//!
//! * [`SparseOperator`]: an explicit CSR matrix, convenient up to a few
//!   hundred thousand rows.
//! * [`TermSum`]: a symbolic sum of products of single-site matrices. It can
//!   be lowered to a [`SparseOperator`] or compiled into a matrix-free
//!   [`CompiledOperator`] for the large spaces used in truncation scans.

mod basis;
mod compiled;
mod error;
mod ladder;
mod permutation;
mod scalar;
mod sparse;
mod su_n;
mod terms;

pub use basis::{BasisSpec, Site, MAX_DIM};
pub use compiled::{CompiledOperator, LinearOperator};
pub use error::CoreError;
pub use ladder::{embed_boson, jordan_wigner, truncated_ladder};
pub use permutation::SignedPermutation;
pub use scalar::Scalar;
pub use sparse::SparseOperator;
pub use su_n::{generators, structure_constants, StructureConstants};
pub use terms::{LocalOp, Term, TermSum};

pub use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, CoreError>;

/// Shorthand for a complex number.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
