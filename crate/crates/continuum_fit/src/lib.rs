//! Polynomial extrapolation of lattice energies to zero lattice spacing.
//!
//! The fit model is `F = E + sum_{i=1}^{n_p} a_i x^i` with `x = 1/(T n_t)`
//! (all temperatures at once) or `x = 1/n_t` (one temperature at a time),
//! solved by weighted least squares with weights `1/sigma^2`.

mod data;
mod fit;

use thiserror::Error;

pub use data::{
    fixture_path, load_fixture, parse_uncertainty, read_dataset, sha256_hex, verify_fixture,
    write_dataset, FitDataset, FitRecord, Provenance, FIXTURES,
};
pub use fit::{
    per_temperature_fit, systematic_scan, wls, wls_polyfit, write_scan_report, FitResult,
    PerTemperature, ScanCell,
};

#[derive(Debug, Error)]
pub enum FitError {
    #[error("{have} points after cuts, need at least {need}")]
    InsufficientData { have: usize, need: usize },
    #[error("design matrix is singular (condition {0:e})")]
    SingularDesign(f64),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error("checksum mismatch for {file}: expected {expected}, got {got}")]
    ChecksumMismatch {
        file: String,
        expected: String,
        got: String,
    },
    #[error("unknown fixture {0}")]
    UnknownFixture(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, FitError>;
