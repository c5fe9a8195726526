use operator_core::{structure_constants, BasisSpec, Complex64, Result, SparseOperator, TermSum};

use crate::local::{momentum, number, position};
use crate::{MiniBmnParams, Model};

struct Fields {
    x1: Vec<TermSum>,
    x2: Vec<TermSum>,
    p1: Vec<TermSum>,
    p2: Vec<TermSum>,
    xi: Vec<TermSum>,
    xi_dag: Vec<TermSum>,
    /// `eps_abc = f_abc / sqrt(2)`.
    eps: Vec<(usize, usize, usize, f64)>,
}

fn fields(p: &MiniBmnParams, basis: &BasisSpec) -> Result<Fields> {
    Model::MiniBmn(*p).check_basis(basis)?;
    let f = structure_constants(p.n)?;
    let m = p.oscillator_mass();
    let adj = f.adj;
    let site = |i: usize, a: usize, op| TermSum::site(basis, basis.boson_site(i, a), op);
    let mut out = Fields {
        x1: Vec::new(),
        x2: Vec::new(),
        p1: Vec::new(),
        p2: Vec::new(),
        xi: Vec::new(),
        xi_dag: Vec::new(),
        eps: f
            .nonzero()
            .into_iter()
            .map(|(a, b, c, v)| (a, b, c, v / 2f64.sqrt()))
            .collect(),
    };
    for a in 0..adj {
        out.x1.push(site(0, a, position(p.cutoff, m))?);
        out.x2.push(site(1, a, position(p.cutoff, m))?);
        out.p1.push(site(0, a, momentum(p.cutoff, m))?);
        out.p2.push(site(1, a, momentum(p.cutoff, m))?);
        let xi = TermSum::fermion_lower(basis, a)?;
        out.xi_dag.push(xi.adjoint());
        out.xi.push(xi);
    }
    Ok(out)
}

/// Minimal BMN Hamiltonian for SU(2), shifted so the free vacuum has zero energy.
///
/// `sum_a [mu (n_1a + 1/2) + mu (n_2a + 1/2) + (3 mu / 2) xi_a^dag xi_a]`
/// `+ g^2 sum_{a != b} X_1a^2 X_2b^2 - 2 g^2 sum_{a < b} X_1a X_1b X_2a X_2b`
/// `+ (i g / sqrt 2) eps_abc [(-X_1a - i X_2a) xi_b^dag xi_c^dag + (-X_1a + i X_2a) xi_b xi_c]`
/// `- 3 mu`.
pub fn minibmn_hamiltonian_terms(p: &MiniBmnParams, basis: &BasisSpec) -> Result<TermSum> {
    p.validate()?;
    let fl = fields(p, basis)?;
    let adj = fl.x1.len();
    let mu = p.mu;
    let g2 = p.g2();
    let g = g2.sqrt();
    let i = Complex64::new(0.0, 1.0);

    let mut h = TermSum::identity(basis, -(adj as f64) * mu);
    if mu > 0.0 {
        h = &h + &TermSum::identity(basis, mu * adj as f64);
        for s in 0..basis.n_boson_sites {
            h = &h + &TermSum::site(basis, s, number(p.cutoff))?.scale_re(mu);
        }
    } else {
        for a in 0..adj {
            h = &h + &(&fl.p1[a] * &fl.p1[a]).scale_re(0.5);
            h = &h + &(&fl.p2[a] * &fl.p2[a]).scale_re(0.5);
        }
    }
    for a in 0..adj {
        h = &h + &(&fl.xi_dag[a] * &fl.xi[a]).scale_re(1.5 * mu);
    }
    if g2 > 0.0 {
        for a in 0..adj {
            for b in 0..adj {
                if a != b {
                    let t = &(&(&fl.x1[a] * &fl.x1[a]) * &fl.x2[b]) * &fl.x2[b];
                    h = &h + &t.scale_re(g2);
                }
                if a < b {
                    let t = &(&(&fl.x1[a] * &fl.x1[b]) * &fl.x2[a]) * &fl.x2[b];
                    h = &h + &t.scale_re(-2.0 * g2);
                }
            }
        }
        let pref = i * (g / 2f64.sqrt());
        for &(a, b, c, e) in &fl.eps {
            let zbar = fl.x1[a].scale_re(-1.0).add(&fl.x2[a].scale(-i))?;
            let z = fl.x1[a].scale_re(-1.0).add(&fl.x2[a].scale(i))?;
            let up = &(&zbar * &fl.xi_dag[b]) * &fl.xi_dag[c];
            let down = &(&z * &fl.xi[b]) * &fl.xi[c];
            h = &h + &(&up + &down).scale(pref * e);
        }
    }
    Ok(h.with_hermitian_hint(true))
}

pub fn build_minibmn_hamiltonian(p: &MiniBmnParams, basis: &BasisSpec) -> Result<SparseOperator> {
    minibmn_hamiltonian_terms(p, basis)?.to_sparse()
}

/// Supercharge `Q = -sqrt2 xi_a^dag (P_Za - i mu Z_a) + sqrt2 g eps_abc xi_a Z_b Z_c^dag`
/// with `Z = (X_1 + i X_2) / sqrt2` and `P_Z = (P_1 + i P_2) / sqrt2`.
///
/// With this complex structure `{Q, Q^dagger} = 2 (H - mu M)` holds for the
/// Hamiltonian of [`minibmn_hamiltonian_terms`] and the generator of
/// [`crate::so2_generator_terms`], up to truncation effects.
pub fn supercharge_terms(p: &MiniBmnParams, basis: &BasisSpec) -> Result<TermSum> {
    p.validate()?;
    let fl = fields(p, basis)?;
    let adj = fl.x1.len();
    let i = Complex64::new(0.0, 1.0);
    let r2 = 2f64.sqrt();
    let z: Vec<TermSum> = (0..adj)
        .map(|a| fl.x1[a].add(&fl.x2[a].scale(i)).map(|t| t.scale_re(1.0 / r2)))
        .collect::<Result<_>>()?;
    let pz: Vec<TermSum> = (0..adj)
        .map(|a| fl.p1[a].add(&fl.p2[a].scale(i)).map(|t| t.scale_re(1.0 / r2)))
        .collect::<Result<_>>()?;
    let mut q = TermSum::zero(basis);
    for a in 0..adj {
        let pi = pz[a].add(&z[a].scale(-i * p.mu))?;
        q = &q + &(&fl.xi_dag[a] * &pi).scale_re(-r2);
    }
    let g = p.g2().sqrt();
    if g > 0.0 {
        for &(a, b, c, e) in &fl.eps {
            let t = &(&fl.xi[a] * &z[b]) * &z[c].adjoint();
            q = &q + &t.scale_re(r2 * g * e);
        }
    }
    Ok(q.with_hermitian_hint(false))
}

pub fn build_supercharge(p: &MiniBmnParams, basis: &BasisSpec) -> Result<SparseOperator> {
    supercharge_terms(p, basis)?.to_sparse()
}
