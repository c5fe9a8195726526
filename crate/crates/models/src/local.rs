use nalgebra::DMatrix;
use operator_core::{Complex64, LocalOp};

/// Truncated lowering operator, `sqrt(n + 1)` at `(n, n + 1)`.
pub fn lowering(cutoff: usize) -> LocalOp {
    let mut a = DMatrix::zeros(cutoff, cutoff);
    for n in 0..cutoff - 1 {
        a[(n, n + 1)] = Complex64::new(((n + 1) as f64).sqrt(), 0.0);
    }
    a
}

pub fn raising(cutoff: usize) -> LocalOp {
    lowering(cutoff).adjoint()
}

pub fn number(cutoff: usize) -> LocalOp {
    DMatrix::from_fn(cutoff, cutoff, |r, c| {
        Complex64::new(if r == c { r as f64 } else { 0.0 }, 0.0)
    })
}

/// `X = (a + a^dagger) / sqrt(2 m)`.
pub fn position(cutoff: usize, mass: f64) -> LocalOp {
    (lowering(cutoff) + raising(cutoff)) * Complex64::new(1.0 / (2.0 * mass).sqrt(), 0.0)
}

/// `P = i sqrt(m / 2) (a^dagger - a)`.
pub fn momentum(cutoff: usize, mass: f64) -> LocalOp {
    (raising(cutoff) - lowering(cutoff)) * Complex64::new(0.0, (mass / 2.0).sqrt())
}
