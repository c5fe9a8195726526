use num_complex::Complex64;

use crate::{BasisSpec, CoreError, Result, SparseOperator};

/// Truncated lowering, raising and number operators on `cutoff` levels.
pub fn truncated_ladder(cutoff: usize) -> Result<(SparseOperator, SparseOperator, SparseOperator)> {
    if cutoff < 2 {
        return Err(CoreError::InvalidParameter(format!(
            "cutoff must be at least 2, got {cutoff}"
        )));
    }
    let lower: Vec<_> = (0..cutoff - 1)
        .map(|n| (n, n + 1, Complex64::new(((n + 1) as f64).sqrt(), 0.0)))
        .collect();
    let a = SparseOperator::from_triplets(cutoff, lower, false)?;
    let a_dag = a.adjoint();
    let number = SparseOperator::diagonal(
        &(0..cutoff)
            .map(|n| Complex64::new(n as f64, 0.0))
            .collect::<Vec<_>>(),
    );
    Ok((a, a_dag, number))
}

/// Places `local` on one tensor factor, identity elsewhere.
fn embed_site(site: usize, local: &SparseOperator, basis: &BasisSpec) -> SparseOperator {
    let strides = basis.strides();
    let inner = strides[site];
    let outer = basis.dim() / (inner * basis.local_dim(site));
    let block = inner * basis.local_dim(site);
    let mut t = Vec::with_capacity(outer * inner * local.nnz());
    for o in 0..outer {
        for (r, c, v) in local.entries() {
            for i in 0..inner {
                t.push((o * block + r * inner + i, o * block + c * inner + i, v));
            }
        }
    }
    SparseOperator::from_triplets(basis.dim(), t, local.hermitian_hint).expect("indices in range")
}

/// `I (x) ... (x) local (x) ... (x) I` with `local` on boson site `site`.
pub fn embed_boson(site: usize, local: &SparseOperator, basis: &BasisSpec) -> Result<SparseOperator> {
    if site >= basis.n_boson_sites {
        return Err(CoreError::InvalidParameter(format!(
            "boson site {site} out of range (have {})",
            basis.n_boson_sites
        )));
    }
    if local.dim() != basis.cutoff {
        return Err(CoreError::DimensionMismatch {
            expected: basis.cutoff,
            got: local.dim(),
        });
    }
    Ok(embed_site(site, local, basis))
}

/// Jordan-Wigner annihilation and creation operators for fermion `k`.
///
/// A `Z = diag(1, -1)` string sits on every earlier fermion mode, and the
/// mode itself carries `[[0, 1], [0, 0]]` (level 1 is occupied).
pub fn jordan_wigner(k: usize, basis: &BasisSpec) -> Result<(SparseOperator, SparseOperator)> {
    if k >= basis.n_fermion_sites {
        return Err(CoreError::InvalidParameter(format!(
            "fermion index {k} out of range (have {})",
            basis.n_fermion_sites
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let z = SparseOperator::diagonal(&[one, -one]);
    let lower = SparseOperator::from_triplets(2, vec![(0, 1, one)], false)?;
    let mut xi = embed_site(basis.fermion_site(k), &lower, basis);
    for j in 0..k {
        xi = embed_site(basis.fermion_site(j), &z, basis).mul(&xi)?;
    }
    xi.hermitian_hint = false;
    let xi_dag = xi.adjoint();
    Ok((xi, xi_dag))
}
