use operator_core::{structure_constants, BasisSpec, Result, SparseOperator, TermSum};

use crate::local::{number, position};
use crate::{BosonicParams, Model};

/// `m sum (n + 1/2) + (g^2 / 4) sum_{c,I,J} (sum_{ab} f_abc X_Ia X_Jb)^2`, `g^2 = lambda / N`.
pub fn bosonic_hamiltonian_terms(p: &BosonicParams, basis: &BasisSpec) -> Result<TermSum> {
    Model::Bosonic(*p).check_basis(basis)?;
    let f = structure_constants(p.n)?;
    let m = p.mass();
    let adj = f.adj;
    let mut h = TermSum::identity(basis, 0.5 * m * basis.n_boson_sites as f64);
    for s in 0..basis.n_boson_sites {
        h = &h + &TermSum::site(basis, s, number(p.cutoff))?.scale_re(m);
    }
    if p.lambda > 0.0 {
        let x: Vec<TermSum> = (0..basis.n_boson_sites)
            .map(|s| TermSum::site(basis, s, position(p.cutoff, m)))
            .collect::<Result<_>>()?;
        let nz = f.nonzero();
        for c in 0..adj {
            for i in 0..2 {
                for j in 0..2 {
                    if i == j {
                        // f is antisymmetric and X_Ia, X_Ib commute, so this vanishes.
                        continue;
                    }
                    let mut t = TermSum::zero(basis);
                    for &(a, b, cc, v) in &nz {
                        if cc == c {
                            let xa = &x[basis.boson_site(i, a)];
                            let xb = &x[basis.boson_site(j, b)];
                            t = &t + &(xa * xb).scale_re(v);
                        }
                    }
                    h = &h + &t.mul(&t)?.scale_re(p.g2() / 4.0);
                }
            }
        }
    }
    Ok(h.with_hermitian_hint(true))
}

pub fn build_bosonic_hamiltonian(p: &BosonicParams, basis: &BasisSpec) -> Result<SparseOperator> {
    bosonic_hamiltonian_terms(p, basis)?.to_sparse()
}
