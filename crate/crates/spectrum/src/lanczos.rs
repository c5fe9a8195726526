//! Thick-restart block Lanczos for the lowest eigenpairs of a Hermitian operator.
//!
//! The Krylov basis is kept fully reorthogonalized (classical Gram-Schmidt,
//! applied twice). The projected matrix `T = V^H A V` is filled column by
//! column from the orthogonalization coefficients, so `A V` is never stored.
//! When the basis is full it is compressed to the lowest Ritz vectors and
//! the last residual block, which keeps the Lanczos relation
//! `A V = V T + R E^T` intact.

use nalgebra::{DMatrix, SymmetricEigen};
use operator_core::{LinearOperator, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::SpectrumError;

#[derive(Clone, Debug)]
pub struct EigenOptions {
    /// Absolute tolerance on `||A v - theta v||`.
    pub tol: f64,
    /// Block size; `None` picks `k`.
    pub block: Option<usize>,
    /// Largest basis before a restart.
    pub max_basis: usize,
    /// Upper bound on operator applications.
    pub max_matvecs: usize,
    pub seed: u64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            block: None,
            max_basis: 24,
            max_matvecs: 20_000,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EigenResult<T> {
    /// Ascending eigenvalues.
    pub values: Vec<f64>,
    /// Unit-norm eigenvectors.
    pub vectors: Vec<Vec<T>>,
    /// Explicit residual norms `||A v - lambda v||`.
    pub residuals: Vec<f64>,
    /// Restart cycles.
    pub iterations: usize,
    pub matvecs: usize,
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let mut s = T::zero();
    for (x, y) in a.iter().zip(b) {
        s += x.conjugate() * *y;
    }
    s
}

fn norm<T: Scalar>(a: &[T]) -> f64 {
    a.iter().map(|x| x.modulus_squared()).sum::<f64>().sqrt()
}

fn axpy<T: Scalar>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * *xi;
    }
}

/// Removes the components of `w` along `basis` (twice) and returns the
/// accumulated coefficients `basis^H w`.
fn orthogonalize<T: Scalar>(basis: &[Vec<T>], w: &mut [T]) -> Vec<T> {
    let mut h = vec![T::zero(); basis.len()];
    for _ in 0..2 {
        let c: Vec<T> = basis.iter().map(|v| dot(v, w)).collect();
        for (v, &cj) in basis.iter().zip(&c) {
            axpy(-cj, v, w);
        }
        for (hj, cj) in h.iter_mut().zip(c) {
            *hj += cj;
        }
    }
    h
}

fn random_vector<T: Scalar>(n: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    (0..n)
        .map(|_| T::from_real(rng.random_range(-1.0..1.0)))
        .collect()
}

/// Turns `vecs` into an orthonormal set orthogonal to `basis`. Returns the
/// upper-triangular factor `B` with `vecs = Q B`; directions that vanish are
/// replaced by fresh random vectors with a zero row in `B`. Pass
/// `orthogonal = true` when `vecs` are already orthogonal to `basis`.
fn orthonormal_block<T: Scalar>(
    basis: &[Vec<T>],
    vecs: &mut [Vec<T>],
    orthogonal: bool,
    rng: &mut ChaCha8Rng,
) -> DMatrix<T> {
    let b = vecs.len();
    let n = vecs.first().map_or(0, |v| v.len());
    let mut bmat = DMatrix::<T>::zeros(b, b);
    let scale = vecs.iter().map(|v| norm(v)).fold(0.0, f64::max).max(1.0);
    for j in 0..b {
        let (done, rest) = vecs.split_at_mut(j);
        let w = &mut rest[0];
        if !orthogonal {
            orthogonalize(basis, w);
        }
        let h = orthogonalize(done, w);
        for (i, hi) in h.into_iter().enumerate() {
            bmat[(i, j)] = hi;
        }
        let nrm = norm(w);
        if nrm > 1e-12 * scale {
            bmat[(j, j)] = T::from_real(nrm);
            w.iter_mut().for_each(|x| *x = x.unscale(nrm));
        } else {
            // Invariant subspace reached along this direction.
            for _ in 0..3 {
                *w = random_vector(n, rng);
                orthogonalize(basis, w);
                orthogonalize(done, w);
                let nr = norm(w);
                if nr > 1e-8 {
                    w.iter_mut().for_each(|x| *x = x.unscale(nr));
                    break;
                }
            }
        }
    }
    bmat
}

/// The `k` algebraically smallest eigenpairs of a Hermitian operator.
pub fn lowest_eigenpairs<T: Scalar, A: LinearOperator<T> + ?Sized>(
    op: &A,
    k: usize,
    opts: &EigenOptions,
) -> Result<EigenResult<T>, SpectrumError> {
    let n = op.dim();
    if k == 0 || k > n {
        return Err(SpectrumError::InvalidRequest(format!(
            "requested {k} eigenpairs of a {n}-dimensional operator"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let b = opts.block.unwrap_or(k).clamp(1, n);
    let max_basis = opts.max_basis.max(k + 2 * b + 4).min(n);
    let keep = (k + b).max(max_basis / 2).min(max_basis.saturating_sub(b));

    let mut basis: Vec<Vec<T>> = Vec::with_capacity(max_basis + b);
    let mut t = DMatrix::<T>::zeros(0, 0);
    let mut block: Vec<Vec<T>> = (0..b).map(|_| random_vector(n, &mut rng)).collect();
    orthonormal_block(&basis, &mut block, false, &mut rng);
    let mut bmat = DMatrix::<T>::zeros(b, b);
    let mut matvecs = 0usize;
    let mut iterations = 0usize;
    let mut w = vec![T::zero(); n];

    loop {
        let block_len = block.len();
        let m0 = basis.len();
        let mut remainders = Vec::with_capacity(block_len);
        basis.append(&mut block);
        let m = basis.len();
        t = t.resize(m, m, T::zero());
        for j in m0..m {
            op.apply(&basis[j], &mut w);
            matvecs += 1;
            let h = orthogonalize(&basis, &mut w);
            for (i, hi) in h.into_iter().enumerate() {
                t[(i, j)] = hi;
                t[(j, i)] = hi.conjugate();
            }
            remainders.push(w.clone());
        }
        for j in m0..m {
            let d = t[(j, j)].real();
            t[(j, j)] = T::from_real(d);
        }

        let full = m >= n;
        if !full {
            bmat = orthonormal_block(&basis, &mut remainders, true, &mut rng);
        }
        let eig = SymmetricEigen::new(t.clone());
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let want = k.min(m);
        let est: Vec<f64> = order[..want]
            .iter()
            .map(|&c| {
                if full {
                    return 0.0;
                }
                let y_last = eig.eigenvectors.view((m - block_len, c), (block_len, 1));
                (&bmat * y_last).norm()
            })
            .collect();
        let converged = want == k && est.iter().all(|&r| r <= opts.tol * 0.5);
        if converged || full || matvecs >= opts.max_matvecs {
            let mut values = Vec::with_capacity(k);
            let mut vectors = Vec::with_capacity(k);
            let mut residuals = Vec::with_capacity(k);
            for &c in &order[..want] {
                let mut v = vec![T::zero(); n];
                for (i, bi) in basis.iter().enumerate() {
                    axpy(eig.eigenvectors[(i, c)], bi, &mut v);
                }
                let nv = norm(&v);
                v.iter_mut().for_each(|x| *x = x.unscale(nv));
                op.apply(&v, &mut w);
                matvecs += 1;
                let theta = dot(&v, &w).real();
                axpy(T::from_real(-theta), &v, &mut w);
                residuals.push(norm(&w));
                values.push(theta);
                vectors.push(v);
            }
            let ok = want == k && residuals.iter().all(|&r| r <= opts.tol);
            if ok {
                return Ok(EigenResult {
                    values,
                    vectors,
                    residuals,
                    iterations,
                    matvecs,
                });
            }
            if matvecs >= opts.max_matvecs || full {
                return Err(SpectrumError::NoConvergence {
                    matvecs,
                    residual: residuals.iter().cloned().fold(0.0, f64::max),
                });
            }
            // Estimated and explicit residuals disagree; keep going.
        }

        if m + b > max_basis {
            iterations += 1;
            let p = keep.min(m);
            let mut kept = Vec::with_capacity(p);
            for &c in &order[..p] {
                let mut v = vec![T::zero(); n];
                for (i, bi) in basis.iter().enumerate() {
                    axpy(eig.eigenvectors[(i, c)], bi, &mut v);
                }
                kept.push(v);
            }
            // Ritz vectors are orthonormal up to roundoff; clean them anyway.
            let mut clean: Vec<Vec<T>> = Vec::with_capacity(p);
            for mut v in kept {
                orthogonalize(&clean, &mut v);
                let nv = norm(&v);
                v.iter_mut().for_each(|x| *x = x.unscale(nv));
                clean.push(v);
            }
            basis = clean;
            t = DMatrix::zeros(p, p);
            for (i, &c) in order[..p].iter().enumerate() {
                t[(i, i)] = T::from_real(eig.eigenvalues[c]);
            }
            // The residual block is already orthogonal to the old basis, hence
            // to the Ritz vectors built from it.
        }
        block = remainders;
    }
}
