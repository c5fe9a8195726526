use std::io::{BufRead, Write};

use operator_core::Complex64;

use crate::{PauliString, PauliSum, QubitError, Result};

/// One term per line: `<re> <im> <label>`.
pub fn write_pauli_sum<W: Write>(h: &PauliSum, mut w: W) -> Result<()> {
    write!(w, "{h}")?;
    Ok(())
}

/// Inverse of [`write_pauli_sum`]. Blank lines and `#` comments are skipped.
/// The sum is flagged Hermitian when every coefficient is real.
pub fn read_pauli_sum<R: BufRead>(r: R) -> Result<PauliSum> {
    let mut terms = Vec::new();
    let mut n_qubits = None;
    for (k, line) in r.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: &str| QubitError::Parse {
            line: k + 1,
            msg: msg.into(),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(err("expected `<re> <im> <string>`"));
        }
        let re: f64 = fields[0].parse().map_err(|_| err("bad real part"))?;
        let im: f64 = fields[1].parse().map_err(|_| err("bad imaginary part"))?;
        let p = PauliString::from_label(fields[2]).ok_or_else(|| err("bad Pauli string"))?;
        let n = fields[2].len();
        if *n_qubits.get_or_insert(n) != n {
            return Err(err("inconsistent string length"));
        }
        terms.push((Complex64::new(re, im), p));
    }
    let hermitian = terms.iter().all(|(c, _)| c.im == 0.0);
    PauliSum::new(n_qubits.unwrap_or(0), terms, hermitian)
}
