use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{CoreError, Result};

/// Complex square matrix in compressed sparse row form.
///
/// Construction always canonicalizes: entries are sorted by (row, col),
/// duplicates are summed and exact zeros dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
    /// Caller's assertion that the matrix is Hermitian.
    pub hermitian_hint: bool,
}

impl SparseOperator {
    pub fn from_triplets(
        dim: usize,
        mut triplets: Vec<(usize, usize, Complex64)>,
        hermitian_hint: bool,
    ) -> Result<Self> {
        if let Some(&(r, c, _)) = triplets.iter().find(|(r, c, _)| *r >= dim || *c >= dim) {
            return Err(CoreError::DimensionMismatch {
                expected: dim,
                got: r.max(c) + 1,
            });
        }
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut vals: Vec<Complex64> = Vec::with_capacity(triplets.len());
        let mut rows = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            if let (Some(&lr), Some(&lc)) = (rows.last(), cols.last()) {
                if lr == r && lc == c {
                    *vals.last_mut().unwrap() += v;
                    continue;
                }
            }
            rows.push(r);
            cols.push(c);
            vals.push(v);
        }
        let mut keep_cols = Vec::with_capacity(cols.len());
        let mut keep_vals = Vec::with_capacity(vals.len());
        for ((r, c), v) in rows.into_iter().zip(cols).zip(vals) {
            if v != Complex64::new(0.0, 0.0) {
                row_ptr[r + 1] += 1;
                keep_cols.push(c);
                keep_vals.push(v);
            }
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        Ok(Self {
            dim,
            row_ptr,
            cols: keep_cols,
            vals: keep_vals,
            hermitian_hint,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            row_ptr: (0..=dim).collect(),
            cols: (0..dim).collect(),
            vals: vec![Complex64::new(1.0, 0.0); dim],
            hermitian_hint: true,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            row_ptr: vec![0; dim + 1],
            cols: Vec::new(),
            vals: Vec::new(),
            hermitian_hint: true,
        }
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let t = diag.iter().enumerate().map(|(i, &v)| (i, i, v)).collect();
        let herm = diag.iter().all(|v| v.im == 0.0);
        Self::from_triplets(diag.len(), t, herm).expect("indices in range")
    }

    pub fn from_dense(m: &DMatrix<Complex64>, hermitian_hint: bool) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(CoreError::DimensionMismatch {
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        let mut t = Vec::new();
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let v = m[(r, c)];
                if v.norm_sqr() > 0.0 {
                    t.push((r, c, v));
                }
            }
        }
        Self::from_triplets(m.nrows(), t, hermitian_hint)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn with_hint(mut self, hermitian_hint: bool) -> Self {
        self.hermitian_hint = hermitian_hint;
        self
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// Column indices and values of one row.
    pub fn row(&self, r: usize) -> (&[usize], &[Complex64]) {
        let (a, b) = (self.row_ptr[r], self.row_ptr[r + 1]);
        (&self.cols[a..b], &self.vals[a..b])
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim).flat_map(move |r| {
            let (cs, vs) = self.row(r);
            cs.iter().zip(vs).map(move |(&c, &v)| (r, c, v))
        })
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        let (cs, vs) = self.row(r);
        match cs.binary_search(&c) {
            Ok(k) => vs[k],
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn matvec(&self, x: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_dim(x.len())?;
        let mut y = vec![Complex64::new(0.0, 0.0); self.dim];
        self.matvec_into(x, &mut y);
        Ok(y)
    }

    /// `y = A x`; lengths must already match.
    pub fn matvec_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (r, yr) in y.iter_mut().enumerate() {
            let (cs, vs) = self.row(r);
            *yr = cs.iter().zip(vs).map(|(&c, &v)| v * x[c]).sum();
        }
    }

    pub fn adjoint(&self) -> Self {
        let t = self.entries().map(|(r, c, v)| (c, r, v.conj())).collect();
        Self::from_triplets(self.dim, t, self.hermitian_hint).expect("indices in range")
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = self.clone();
        out.vals.iter_mut().for_each(|v| *v *= s);
        if s.im != 0.0 {
            out.hermitian_hint = false;
        }
        if s == Complex64::new(0.0, 0.0) {
            return Self::zeros(self.dim);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let t = self.entries().chain(other.entries()).collect();
        Self::from_triplets(
            self.dim,
            t,
            self.hermitian_hint && other.hermitian_hint,
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim)?;
        let mut t = Vec::new();
        let mut acc = vec![Complex64::new(0.0, 0.0); self.dim];
        let mut touched: Vec<usize> = Vec::new();
        let mut mark = vec![false; self.dim];
        for r in 0..self.dim {
            let (cs, vs) = self.row(r);
            for (&k, &a) in cs.iter().zip(vs) {
                let (cs2, vs2) = other.row(k);
                for (&c, &b) in cs2.iter().zip(vs2) {
                    if !mark[c] {
                        mark[c] = true;
                        touched.push(c);
                    }
                    acc[c] += a * b;
                }
            }
            for &c in &touched {
                t.push((r, c, acc[c]));
                acc[c] = Complex64::new(0.0, 0.0);
                mark[c] = false;
            }
            touched.clear();
        }
        Self::from_triplets(self.dim, t, false)
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// Kronecker product with `self` as the more significant factor.
    pub fn kron(&self, other: &Self) -> Self {
        let d = self.dim * other.dim;
        let mut t = Vec::with_capacity(self.nnz() * other.nnz());
        for (r1, c1, v1) in self.entries() {
            for (r2, c2, v2) in other.entries() {
                t.push((r1 * other.dim + r2, c1 * other.dim + c2, v1 * v2));
            }
        }
        Self::from_triplets(d, t, self.hermitian_hint && other.hermitian_hint)
            .expect("indices in range")
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.entries() {
            m[(r, c)] += v;
        }
        m
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self
            .sub(other)?
            .vals
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max))
    }

    /// Largest entry of `|A - A^dagger|`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint()).expect("same dimension")
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Re-applies canonicalization. The result is always identical to the input
    /// since construction already canonicalizes.
    pub fn canonicalize(&self) -> Self {
        Self::from_triplets(self.dim, self.entries().collect(), self.hermitian_hint)
            .expect("indices in range")
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got == self.dim {
            Ok(())
        } else {
            Err(CoreError::DimensionMismatch {
                expected: self.dim,
                got,
            })
        }
    }
}
