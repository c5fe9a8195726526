//! Lowest eigenpairs of truncated Hamiltonians and cutoff scans.

mod lanczos;
mod scan;

use operator_core::{Complex64, CoreError, LinearOperator, Scalar, SparseOperator};
use thiserror::Error;

pub use lanczos::{lowest_eigenpairs, EigenOptions, EigenResult};
pub use scan::{
    bps_residual, solve_model, truncation_scan, write_scan_csv, Coefficient, LevelData, Penalty, ScanOutput,
    ScanRow,
};

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("eigensolver did not converge after {matvecs} operator applications (residual {residual:e})")]
    NoConvergence { matvecs: usize, residual: f64 },
    #[error("operator is not Hermitian (defect {0:e})")]
    NonHermitianInput(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("expectation value has imaginary part {0:e}")]
    NonNegligibleImaginaryPart(f64),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, SpectrumError>;

/// Eigenpairs of an explicit sparse matrix, checking hermiticity first.
pub fn lowest_eigenpairs_sparse(
    h: &SparseOperator,
    k: usize,
    opts: &EigenOptions,
) -> Result<EigenResult<Complex64>> {
    let defect = h.hermiticity_defect();
    if defect > 1e-10 {
        return Err(SpectrumError::NonHermitianInput(defect));
    }
    lowest_eigenpairs(h, k, opts)
}

/// `<v|O|v>` for a unit vector `v`.
pub fn expectation<T: Scalar, A: LinearOperator<T> + ?Sized>(op: &A, v: &[T]) -> Result<Complex64> {
    if v.len() != op.dim() {
        return Err(SpectrumError::DimensionMismatch {
            expected: op.dim(),
            got: v.len(),
        });
    }
    let mut w = vec![T::zero(); v.len()];
    op.apply(v, &mut w);
    let mut s = Complex64::new(0.0, 0.0);
    for (a, b) in v.iter().zip(&w) {
        s += (a.conjugate() * *b).to_c64();
    }
    Ok(s)
}

/// Real part of `<v|O|v>`, rejecting a non-negligible imaginary part.
pub fn expectation_real<T: Scalar, A: LinearOperator<T> + ?Sized>(op: &A, v: &[T]) -> Result<f64> {
    let z = expectation(op, v)?;
    if z.im.abs() > 1e-10 * z.re.abs().max(1.0) {
        return Err(SpectrumError::NonNegligibleImaginaryPart(z.im));
    }
    Ok(z.re)
}
