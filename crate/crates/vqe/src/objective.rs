use operator_core::{Complex64, SparseOperator};
use qubit_map::{decode, PauliSum};

use crate::ansatz::{apply, ry, rz};
use crate::{AnsatzSpec, Gate, Result, VqeError};

/// `E(theta) = <psi(theta)|H|psi(theta)>` with `H` held as an explicit matrix.
pub struct Objective {
    spec: AnsatzSpec,
    gates: Vec<Gate>,
    h: SparseOperator,
}

fn dot_re(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.conj() * y).re).sum()
}

impl Objective {
    pub fn new(h: &PauliSum, spec: AnsatzSpec) -> Result<Self> {
        if h.n_qubits() != spec.n_qubits {
            return Err(VqeError::QubitMismatch {
                hamiltonian: h.n_qubits(),
                ansatz: spec.n_qubits,
            });
        }
        Ok(Self {
            spec,
            gates: spec.gates(),
            h: decode(h)?,
        })
    }

    pub fn spec(&self) -> &AnsatzSpec {
        &self.spec
    }

    pub fn hamiltonian(&self) -> &SparseOperator {
        &self.h
    }

    pub fn energy(&self, theta: &[f64]) -> Result<f64> {
        let psi = self.spec.state(theta)?;
        let mut w = vec![Complex64::new(0.0, 0.0); psi.len()];
        self.h.matvec_into(&psi, &mut w);
        let e = dot_re(&psi, &w);
        if e.is_finite() {
            Ok(e)
        } else {
            Err(VqeError::ObjectiveNotFinite)
        }
    }

    /// Exact gradient by reverse-mode sweep through the circuit.
    pub fn gradient(&self, theta: &[f64]) -> Result<(f64, Vec<f64>)> {
        let n = self.spec.n_qubits;
        let mut phi = self.spec.state(theta)?;
        let mut lambda = vec![Complex64::new(0.0, 0.0); phi.len()];
        self.h.matvec_into(&phi, &mut lambda);
        let e = dot_re(&phi, &lambda);
        if !e.is_finite() {
            return Err(VqeError::ObjectiveNotFinite);
        }
        let mut grad = vec![0.0; theta.len()];
        let mut mu = phi.clone();
        for &g in self.gates.iter().rev() {
            apply(n, g, theta, &mut phi, true);
            // dR(t)/dt = R(t + pi) / 2 for both rotation axes.
            let p = match g {
                Gate::Ry(q, p) => {
                    mu.copy_from_slice(&phi);
                    ry(n, q, theta[p] + std::f64::consts::PI, &mut mu);
                    Some(p)
                }
                Gate::Rz(q, p) => {
                    mu.copy_from_slice(&phi);
                    rz(n, q, theta[p] + std::f64::consts::PI, &mut mu);
                    Some(p)
                }
                Gate::Cnot(..) => None,
            };
            if let Some(p) = p {
                grad[p] = dot_re(&lambda, &mu);
            }
            apply(n, g, theta, &mut lambda, true);
        }
        Ok((e, grad))
    }

    /// Central finite differences with step `h`.
    pub fn fd_gradient(&self, theta: &[f64], h: f64) -> Result<Vec<f64>> {
        let mut t = theta.to_vec();
        let mut g = Vec::with_capacity(theta.len());
        for k in 0..theta.len() {
            t[k] = theta[k] + h;
            let up = self.energy(&t)?;
            t[k] = theta[k] - h;
            let down = self.energy(&t)?;
            t[k] = theta[k];
            g.push((up - down) / (2.0 * h));
        }
        Ok(g)
    }

    /// `dE/dtheta_k = (E(theta + pi/2 e_k) - E(theta - pi/2 e_k)) / 2`.
    pub fn parameter_shift_gradient(&self, theta: &[f64]) -> Result<Vec<f64>> {
        let s = std::f64::consts::FRAC_PI_2;
        let mut t = theta.to_vec();
        let mut g = Vec::with_capacity(theta.len());
        for k in 0..theta.len() {
            t[k] = theta[k] + s;
            let up = self.energy(&t)?;
            t[k] = theta[k] - s;
            let down = self.energy(&t)?;
            t[k] = theta[k];
            g.push((up - down) / 2.0);
        }
        Ok(g)
    }
}

/// One-off energy evaluation through the Pauli expansion.
pub fn energy(h: &PauliSum, spec: &AnsatzSpec, theta: &[f64]) -> Result<f64> {
    if h.n_qubits() != spec.n_qubits {
        return Err(VqeError::QubitMismatch {
            hamiltonian: h.n_qubits(),
            ansatz: spec.n_qubits,
        });
    }
    let psi = spec.state(theta)?;
    Ok(qubit_map::pauli_expectation(h, &psi)?)
}
