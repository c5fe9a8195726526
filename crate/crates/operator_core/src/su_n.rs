use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{CoreError, Result};

/// Totally antisymmetric structure constants of su(N) in the basis
/// normalized by `Tr(tau_a tau_b) = delta_ab`. Indices are zero-based.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    pub n: usize,
    /// Number of generators, `n^2 - 1`.
    pub adj: usize,
    f: Vec<f64>,
}

impl StructureConstants {
    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.f[(a * self.adj + b) * self.adj + c]
    }

    /// Nonzero entries `(a, b, c, f_abc)`, all orderings included.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, f64)> {
        let d = self.adj;
        let mut out = Vec::new();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let v = self.get(a, b, c);
                    if v != 0.0 {
                        out.push((a, b, c, v));
                    }
                }
            }
        }
        out
    }
}

/// Hermitian generators `tau_a`, Pauli or Gell-Mann matrices divided by sqrt(2).
pub fn generators(n: usize) -> Result<Vec<DMatrix<Complex64>>> {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let raw: Vec<Vec<Complex64>> = match n {
        2 => vec![
            vec![z, one, one, z],
            vec![z, -i, i, z],
            vec![one, z, z, -one],
        ],
        3 => {
            let s3 = 1.0 / 3f64.sqrt();
            vec![
                vec![z, one, z, one, z, z, z, z, z],
                vec![z, -i, z, i, z, z, z, z, z],
                vec![one, z, z, z, -one, z, z, z, z],
                vec![z, z, one, z, z, z, one, z, z],
                vec![z, z, -i, z, z, z, i, z, z],
                vec![z, z, z, z, z, one, z, one, z],
                vec![z, z, z, z, z, -i, z, i, z],
                vec![one * s3, z, z, z, one * s3, z, z, z, one * (-2.0 * s3)],
            ]
        }
        _ => return Err(CoreError::UnsupportedGroup(n)),
    };
    let norm = 1.0 / 2f64.sqrt();
    Ok(raw
        .into_iter()
        .map(|v| DMatrix::from_row_slice(n, n, &v) * Complex64::new(norm, 0.0))
        .collect())
}

/// `f_abc = -i Tr([tau_a, tau_b] tau_c)`, rounded to the nearest multiple
/// of machine precision so exact zeros stay exact.
pub fn structure_constants(n: usize) -> Result<StructureConstants> {
    let t = generators(n)?;
    let adj = t.len();
    let mut f = vec![0.0; adj * adj * adj];
    for a in 0..adj {
        for b in 0..adj {
            let comm = &t[a] * &t[b] - &t[b] * &t[a];
            for c in 0..adj {
                let v = (Complex64::new(0.0, -1.0) * (&comm * &t[c]).trace()).re;
                f[(a * adj + b) * adj + c] = if v.abs() < 1e-14 { 0.0 } else { v };
            }
        }
    }
    Ok(StructureConstants { n, adj, f })
}
