use num_complex::Complex64;

use crate::{LinearOperator, Result, Scalar, SparseOperator};

/// Matrix with exactly one entry of +-1 per row and column.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedPermutation {
    /// Basis state `i` is sent to `target[i]`.
    pub target: Vec<usize>,
    /// Sign picked up by basis state `i`.
    pub sign: Vec<f64>,
}

impl SignedPermutation {
    pub fn to_sparse(&self) -> Result<SparseOperator> {
        let t = (0..self.target.len())
            .map(|i| (self.target[i], i, Complex64::new(self.sign[i], 0.0)))
            .collect();
        SparseOperator::from_triplets(self.target.len(), t, false)
    }
}

impl<T: Scalar> LinearOperator<T> for SignedPermutation {
    fn dim(&self) -> usize {
        self.target.len()
    }
    fn apply(&self, x: &[T], y: &mut [T]) {
        for i in 0..x.len() {
            y[self.target[i]] = x[i] * T::from_real(self.sign[i]);
        }
    }
}
