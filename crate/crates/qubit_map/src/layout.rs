use operator_core::{BasisSpec, Complex64, SparseOperator};

use crate::pauli::MAX_QUBITS;
use crate::{encode, PauliSum, QubitError, Result};

/// Qubits per site: `log2(cutoff)` for bosons, one per fermion.
pub fn qubit_count(basis: &BasisSpec) -> Result<usize> {
    if !basis.cutoff.is_power_of_two() {
        return Err(QubitError::NonPowerOfTwoDimension(basis.cutoff));
    }
    let k = basis.cutoff.trailing_zeros() as usize;
    let n = k * basis.n_boson_sites + basis.n_fermion_sites;
    if n > MAX_QUBITS {
        return Err(QubitError::TooManyQubits(n));
    }
    Ok(n)
}

/// `perm[i]` is the qubit-order index of Fock-basis index `i`.
pub fn fock_to_qubit_permutation(basis: &BasisSpec) -> Result<Vec<usize>> {
    let n = qubit_count(basis)?;
    let mut perm = vec![0usize; basis.dim()];
    for (i, p) in perm.iter_mut().enumerate() {
        let digits = basis.digits(i);
        let mut q = 0;
        let mut out = 0usize;
        for (s, &d) in digits.iter().enumerate() {
            let k = basis.local_dim(s).trailing_zeros() as usize;
            for l in 0..k {
                if (d >> l) & 1 == 1 {
                    out |= 1 << (n - 1 - q);
                }
                q += 1;
            }
        }
        *p = out;
    }
    Ok(perm)
}

/// Relabels a Fock-basis operator into qubit order.
pub fn to_qubit_order(op: &SparseOperator, basis: &BasisSpec) -> Result<SparseOperator> {
    if op.dim() != basis.dim() {
        return Err(QubitError::DimensionMismatch {
            expected: basis.dim(),
            got: op.dim(),
        });
    }
    let perm = fock_to_qubit_permutation(basis)?;
    let t = op.entries().map(|(r, c, v)| (perm[r], perm[c], v)).collect();
    Ok(SparseOperator::from_triplets(op.dim(), t, op.hermitian_hint)?)
}

/// Relabels a Fock-basis state into qubit order.
pub fn permute_state(psi: &[Complex64], basis: &BasisSpec) -> Result<Vec<Complex64>> {
    if psi.len() != basis.dim() {
        return Err(QubitError::DimensionMismatch {
            expected: basis.dim(),
            got: psi.len(),
        });
    }
    let perm = fock_to_qubit_permutation(basis)?;
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
    for (i, &v) in psi.iter().enumerate() {
        out[perm[i]] = v;
    }
    Ok(out)
}

/// Pauli decomposition of an operator given in the Fock basis of `basis`.
pub fn encode_fock(op: &SparseOperator, basis: &BasisSpec) -> Result<PauliSum> {
    let n = qubit_count(basis)?;
    encode(&to_qubit_order(op, basis)?, n)
}
