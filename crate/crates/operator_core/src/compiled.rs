use num_complex::Complex64;

use crate::{CoreError, Result, Scalar, SparseOperator, Term, TermSum};

/// Anything that can compute `y = A x`.
pub trait LinearOperator<T: Scalar>: Sync {
    fn dim(&self) -> usize;
    /// Overwrites `y` with `A x`.
    fn apply(&self, x: &[T], y: &mut [T]);
}

impl LinearOperator<Complex64> for SparseOperator {
    fn dim(&self) -> usize {
        SparseOperator::dim(self)
    }
    fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        self.matvec_into(x, y)
    }
}

/// One block of terms acting on a fixed set of sites.
#[derive(Clone, Debug)]
struct Block<T> {
    /// Global index offset of every local basis state.
    local_offset: Vec<usize>,
    row_ptr: Vec<usize>,
    /// Global offsets of column states (already mapped through `local_offset`).
    col_offset: Vec<usize>,
    vals: Vec<T>,
    /// Global offsets of every configuration of the remaining sites.
    outer: Vec<usize>,
}

/// Matrix-free form of a [`TermSum`].
///
/// Terms are grouped by the sites they touch. Each group is stored as a
/// sparse matrix on its own small product space and applied to every
/// configuration of the other sites, so memory grows with the local
/// dimension rather than the global one.
#[derive(Clone, Debug)]
pub struct CompiledOperator<T> {
    dim: usize,
    blocks: Vec<Block<T>>,
}

/// Nonzero `(row, col, value)` entries of a local matrix.
fn local_entries(m: &crate::LocalOp) -> Vec<(usize, usize, Complex64)> {
    let mut out = Vec::new();
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            let v = m[(r, c)];
            if v.norm_sqr() != 0.0 {
                out.push((r, c, v));
            }
        }
    }
    out
}

/// Entries of `coeff * (x)_s F_s` on the product space of `sites`, with identity
/// filling sites the term does not touch.
fn expand_term(term: &Term, sites: &[usize], dims: &[usize]) -> Vec<(usize, usize, Complex64)> {
    let mut acc = vec![(0usize, 0usize, term.coeff)];
    for &s in sites {
        let d = dims[s];
        let ent = match term.factors.iter().find(|(fs, _)| *fs == s) {
            Some((_, m)) => local_entries(m),
            None => (0..d).map(|i| (i, i, Complex64::new(1.0, 0.0))).collect(),
        };
        let mut next = Vec::with_capacity(acc.len() * ent.len());
        for &(r, c, v) in &acc {
            for &(r2, c2, v2) in &ent {
                next.push((r * d + r2, c * d + c2, v * v2));
            }
        }
        acc = next;
    }
    acc
}

impl<T: Scalar> CompiledOperator<T> {
    pub fn new(ops: &TermSum) -> Result<Self> {
        let dims = ops.local_dims();
        let n = dims.len();
        let mut strides = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        let dim: usize = dims.iter().product();
        let mut blocks = Vec::new();
        for (sites, terms) in ops.grouped() {
            let ldim: usize = sites.iter().map(|&s| dims[s]).product();
            let mut trip = Vec::new();
            for t in terms {
                trip.extend(expand_term(t, &sites, dims));
            }
            let local = SparseOperator::from_triplets(ldim, trip, false)?;
            if local.nnz() == 0 {
                continue;
            }
            let local_offset = offsets(&sites, dims, &strides);
            let rest: Vec<usize> = (0..n).filter(|s| !sites.contains(s)).collect();
            let outer = offsets(&rest, dims, &strides);
            let mut row_ptr = Vec::with_capacity(ldim + 1);
            let mut col_offset = Vec::with_capacity(local.nnz());
            let mut vals = Vec::with_capacity(local.nnz());
            row_ptr.push(0);
            for r in 0..ldim {
                let (cs, vs) = local.row(r);
                for (&c, &v) in cs.iter().zip(vs) {
                    col_offset.push(local_offset[c]);
                    vals.push(T::from_c64(v).ok_or(CoreError::NotReal)?);
                }
                row_ptr.push(col_offset.len());
            }
            blocks.push(Block {
                local_offset,
                row_ptr,
                col_offset,
                vals,
                outer,
            });
        }
        Ok(Self { dim, blocks })
    }

    /// All stored entries in global coordinates, duplicates included.
    pub fn triplets(&self) -> Vec<(usize, usize, Complex64)> {
        let mut t = Vec::new();
        for b in &self.blocks {
            for &o in &b.outer {
                for r in 0..b.local_offset.len() {
                    for k in b.row_ptr[r]..b.row_ptr[r + 1] {
                        t.push((o + b.local_offset[r], o + b.col_offset[k], b.vals[k].to_c64()));
                    }
                }
            }
        }
        t
    }

    /// Number of stored local entries times the number of outer repeats.
    pub fn work_per_apply(&self) -> usize {
        self.blocks.iter().map(|b| b.vals.len() * b.outer.len()).sum()
    }

    /// `y += A x`.
    pub fn apply_add(&self, x: &[T], y: &mut [T]) {
        for b in &self.blocks {
            let nl = b.local_offset.len();
            for &o in &b.outer {
                let xo = &x[o..];
                for r in 0..nl {
                    let (s, e) = (b.row_ptr[r], b.row_ptr[r + 1]);
                    if s == e {
                        continue;
                    }
                    let mut acc = T::zero();
                    for k in s..e {
                        acc += b.vals[k] * xo[b.col_offset[k]];
                    }
                    y[o + b.local_offset[r]] += acc;
                }
            }
        }
    }
}

impl<T: Scalar> LinearOperator<T> for CompiledOperator<T> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn apply(&self, x: &[T], y: &mut [T]) {
        y.iter_mut().for_each(|v| *v = T::zero());
        self.apply_add(x, y);
    }
}

/// Global offsets of every digit assignment of `sites`, in local row-major order.
fn offsets(sites: &[usize], dims: &[usize], strides: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &s in sites {
        let mut next = Vec::with_capacity(out.len() * dims[s]);
        for &o in &out {
            for d in 0..dims[s] {
                next.push(o + d * strides[s]);
            }
        }
        out = next;
    }
    out
}
