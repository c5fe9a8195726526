use nalgebra::ComplexField;
use num_complex::Complex64;

/// Field used by matrix-free operators and the eigensolver.
///
/// Real symmetric problems (the bosonic Hamiltonians) run in `f64`, which
/// halves memory traffic; anything with genuinely complex entries uses
/// [`Complex64`].
pub trait Scalar: ComplexField<RealField = f64> + Copy + Default + Send + Sync {
    /// Converts a complex number, failing if the imaginary part does not fit.
    fn from_c64(z: Complex64) -> Option<Self>;
    fn to_c64(self) -> Complex64;
}

impl Scalar for f64 {
    fn from_c64(z: Complex64) -> Option<Self> {
        (z.im == 0.0).then_some(z.re)
    }
    fn to_c64(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Scalar for Complex64 {
    fn from_c64(z: Complex64) -> Option<Self> {
        Some(z)
    }
    fn to_c64(self) -> Complex64 {
        self
    }
}
