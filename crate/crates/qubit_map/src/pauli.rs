use std::collections::BTreeMap;
use std::fmt;

use operator_core::{Complex64, SparseOperator};

use crate::{QubitError, Result};

pub(crate) const MAX_QUBITS: usize = 30;

/// Tensor product of single-qubit Paulis, stored as bit masks over
/// statevector index bits: `P = i^{|x & z|} X^x Z^z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString {
    pub x: u32,
    pub z: u32,
}

impl PauliString {
    pub fn identity() -> Self {
        Self { x: 0, z: 0 }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        let n = label.chars().count();
        if n > MAX_QUBITS {
            return None;
        }
        let mut p = Self::identity();
        for (q, ch) in label.chars().enumerate() {
            let bit = 1u32 << (n - 1 - q);
            match ch {
                'I' => {}
                'X' => p.x |= bit,
                'Z' => p.z |= bit,
                'Y' => {
                    p.x |= bit;
                    p.z |= bit;
                }
                _ => return None,
            }
        }
        Some(p)
    }

    pub fn label(&self, n_qubits: usize) -> String {
        (0..n_qubits)
            .map(|q| {
                let bit = 1u32 << (n_qubits - 1 - q);
                match (self.x & bit != 0, self.z & bit != 0) {
                    (false, false) => 'I',
                    (true, false) => 'X',
                    (false, true) => 'Z',
                    (true, true) => 'Y',
                }
            })
            .collect()
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// `i^{|x & z|}`.
    fn phase(&self) -> Complex64 {
        match (self.x & self.z).count_ones() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// `P|r> = value |r ^ x>`.
    #[inline]
    pub fn apply_basis(&self, r: usize) -> (usize, Complex64) {
        let sign = if (self.z as usize & r).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        (r ^ self.x as usize, self.phase() * sign)
    }
}

/// Weighted sum of Pauli strings with merged, canonically ordered terms.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: Vec<(Complex64, PauliString)>,
    hermitian: bool,
}

impl PauliSum {
    /// Merges duplicates, drops `|c| < 1e-14` and sorts by string. When
    /// `hermitian` is set, imaginary parts are discarded.
    pub fn new(n_qubits: usize, terms: Vec<(Complex64, PauliString)>, hermitian: bool) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(QubitError::TooManyQubits(n_qubits));
        }
        let limit = if n_qubits == 0 { 0 } else { (1u64 << n_qubits) - 1 };
        let mut merged: BTreeMap<PauliString, Complex64> = BTreeMap::new();
        for (c, p) in terms {
            if (p.x | p.z) as u64 & !limit != 0 {
                return Err(QubitError::DimensionMismatch {
                    expected: n_qubits,
                    got: 32 - (p.x | p.z).leading_zeros() as usize,
                });
            }
            *merged.entry(p).or_default() += c;
        }
        let terms = merged
            .into_iter()
            .map(|(p, c)| if hermitian { (Complex64::new(c.re, 0.0), p) } else { (c, p) })
            .filter(|(c, _)| c.norm() >= 1e-14)
            .collect();
        Ok(Self {
            n_qubits,
            terms,
            hermitian,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn terms(&self) -> &[(Complex64, PauliString)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    /// Coefficient of the string with the given label, zero if absent.
    pub fn coefficient(&self, label: &str) -> Complex64 {
        PauliString::from_label(label)
            .and_then(|p| self.terms.iter().find(|(_, q)| *q == p))
            .map_or(Complex64::new(0.0, 0.0), |(c, _)| *c)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (c, p) in &self.terms {
            writeln!(f, "{:?} {:?} {}", c.re, c.im, p.label(self.n_qubits))?;
        }
        Ok(())
    }
}

/// In-place Walsh-Hadamard transform: `v[z] <- sum_r (-1)^{z.r} v[r]`.
fn walsh_hadamard(v: &mut [Complex64]) {
    let n = v.len();
    let mut h = 1;
    while h < n {
        for i in (0..n).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// `c_P = Tr(P op) / 2^n` for every string, for an operator already in
/// qubit order. Runs one Walsh-Hadamard transform per distinct `row ^ col`.
pub fn encode(op: &SparseOperator, n_qubits: usize) -> Result<PauliSum> {
    let dim = op.dim();
    if !dim.is_power_of_two() {
        return Err(QubitError::NonPowerOfTwoDimension(dim));
    }
    if dim != 1usize << n_qubits {
        return Err(QubitError::DimensionMismatch {
            expected: 1 << n_qubits,
            got: dim,
        });
    }
    if n_qubits > MAX_QUBITS {
        return Err(QubitError::TooManyQubits(n_qubits));
    }
    let mut by_x: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
    for (r, c, v) in op.entries() {
        by_x.entry(r ^ c).or_default().push((r, v));
    }
    let scale = 1.0 / dim as f64;
    let mut terms = Vec::new();
    let mut buf = vec![Complex64::new(0.0, 0.0); dim];
    for (x, entries) in by_x {
        // Tr(P op) = i^{|x&z|} sum_r (-1)^{z.r} op[r, r^x].
        buf.iter_mut().for_each(|b| *b = Complex64::new(0.0, 0.0));
        for (r, v) in entries {
            buf[r] = v;
        }
        walsh_hadamard(&mut buf);
        for (z, &s) in buf.iter().enumerate() {
            if s.norm() * scale >= 1e-14 {
                let p = PauliString { x: x as u32, z: z as u32 };
                terms.push((p.phase() * s * scale, p));
            }
        }
    }
    PauliSum::new(n_qubits, terms, op.hermitian_hint)
}

/// Explicit matrix of a Pauli sum, in qubit order.
pub fn decode(h: &PauliSum) -> Result<SparseOperator> {
    let dim = h.dim();
    let mut t = Vec::with_capacity(h.len() * dim);
    for &(c, p) in &h.terms {
        for r in 0..dim {
            let (row, v) = p.apply_basis(r);
            t.push((row, r, c * v));
        }
    }
    Ok(SparseOperator::from_triplets(dim, t, h.hermitian)?)
}

/// `Re sum_P c_P <psi|P|psi>` for a normalized statevector in qubit order.
pub fn pauli_expectation(h: &PauliSum, psi: &[Complex64]) -> Result<f64> {
    if psi.len() != h.dim() {
        return Err(QubitError::DimensionMismatch {
            expected: h.dim(),
            got: psi.len(),
        });
    }
    let mut total = Complex64::new(0.0, 0.0);
    for &(c, p) in &h.terms {
        let ph = p.phase();
        let x = p.x as usize;
        let z = p.z as usize;
        let mut s = Complex64::new(0.0, 0.0);
        for (r, &a) in psi.iter().enumerate() {
            let term = psi[r ^ x].conj() * a;
            if (z & r).count_ones() % 2 == 0 {
                s += term;
            } else {
                s -= term;
            }
        }
        total += c * ph * s;
    }
    Ok(total.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_roundtrip() {
        for l in ["I", "XYZ", "ZIIY", "IIIIIIIIIIIX"] {
            assert_eq!(PauliString::from_label(l).unwrap().label(l.len()), l);
        }
        assert!(PauliString::from_label("XA").is_none());
    }

    #[test]
    fn y_matrix() {
        let y = PauliString::from_label("Y").unwrap();
        assert_eq!(y.apply_basis(0), (1, Complex64::new(0.0, 1.0)));
        assert_eq!(y.apply_basis(1), (0, Complex64::new(0.0, -1.0)));
    }
}
