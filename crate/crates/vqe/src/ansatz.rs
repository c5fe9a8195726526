use operator_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Result, VqeError};

pub const MAX_QUBITS: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum AnsatzForm {
    Ry,
    RyRz,
}

/// Hardware-efficient circuit: a rotation layer, then CNOT(i, j) for every
/// `i < j`, repeated `depth` times, then a final rotation layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub n_qubits: usize,
    pub form: AnsatzForm,
    pub depth: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    /// `Ry(theta[param])` on a qubit.
    Ry(usize, usize),
    /// `Rz(theta[param])` on a qubit.
    Rz(usize, usize),
    /// Control, target.
    Cnot(usize, usize),
}

impl AnsatzSpec {
    pub fn new(n_qubits: usize, form: AnsatzForm, depth: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(VqeError::TooManyQubits(n_qubits));
        }
        Ok(Self {
            n_qubits,
            form,
            depth,
        })
    }

    pub fn n_params(&self) -> usize {
        let per = match self.form {
            AnsatzForm::Ry => 1,
            AnsatzForm::RyRz => 2,
        };
        per * self.n_qubits * (self.depth + 1)
    }

    pub fn gates(&self) -> Vec<Gate> {
        let n = self.n_qubits;
        let mut g = Vec::new();
        let mut p = 0;
        for layer in 0..=self.depth {
            for q in 0..n {
                g.push(Gate::Ry(q, p));
                p += 1;
            }
            if self.form == AnsatzForm::RyRz {
                for q in 0..n {
                    g.push(Gate::Rz(q, p));
                    p += 1;
                }
            }
            if layer < self.depth {
                for i in 0..n {
                    for j in i + 1..n {
                        g.push(Gate::Cnot(i, j));
                    }
                }
            }
        }
        g
    }

    pub(crate) fn check(&self, theta: &[f64]) -> Result<()> {
        if theta.len() != self.n_params() {
            return Err(VqeError::ParameterCountMismatch {
                expected: self.n_params(),
                got: theta.len(),
            });
        }
        Ok(())
    }

    /// `psi(theta)` applied to `|0...0>`.
    pub fn state(&self, theta: &[f64]) -> Result<Vec<Complex64>> {
        self.check(theta)?;
        let mut psi = vec![Complex64::new(0.0, 0.0); 1 << self.n_qubits];
        psi[0] = Complex64::new(1.0, 0.0);
        for g in self.gates() {
            apply(self.n_qubits, g, theta, &mut psi, false);
        }
        Ok(psi)
    }
}

/// Applies a gate, or its inverse when `adjoint` is set. Qubit `q` is index
/// bit `n - 1 - q`.
pub(crate) fn apply(n: usize, g: Gate, theta: &[f64], psi: &mut [Complex64], adjoint: bool) {
    let sgn = if adjoint { -1.0 } else { 1.0 };
    match g {
        Gate::Ry(q, p) => ry(n, q, sgn * theta[p], psi),
        Gate::Rz(q, p) => rz(n, q, sgn * theta[p], psi),
        Gate::Cnot(c, t) => cnot(n, c, t, psi),
    }
}

pub(crate) fn ry(n: usize, q: usize, angle: f64, psi: &mut [Complex64]) {
    let (s, c) = (angle / 2.0).sin_cos();
    let bit = 1usize << (n - 1 - q);
    for i in 0..psi.len() {
        if i & bit == 0 {
            let (a, b) = (psi[i], psi[i | bit]);
            psi[i] = a * c - b * s;
            psi[i | bit] = a * s + b * c;
        }
    }
}

pub(crate) fn rz(n: usize, q: usize, angle: f64, psi: &mut [Complex64]) {
    let lo = Complex64::from_polar(1.0, -angle / 2.0);
    let hi = lo.conj();
    let bit = 1usize << (n - 1 - q);
    for (i, v) in psi.iter_mut().enumerate() {
        *v *= if i & bit == 0 { lo } else { hi };
    }
}

fn cnot(n: usize, c: usize, t: usize, psi: &mut [Complex64]) {
    let cb = 1usize << (n - 1 - c);
    let tb = 1usize << (n - 1 - t);
    for i in 0..psi.len() {
        if i & cb != 0 && i & tb == 0 {
            psi.swap(i, i | tb);
        }
    }
}
