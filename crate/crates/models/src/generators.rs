use nalgebra::DMatrix;
use operator_core::{
    structure_constants, BasisSpec, Complex64, CoreError, Result, SignedPermutation,
    SparseOperator, TermSum,
};

use crate::local::{lowering, raising};
use crate::{Deformation, Model};

/// `G_a = i eps_abc (sum_I a_Ib^dag a_Ic + xi_b^dag xi_c)` with `eps = f / sqrt 2`.
pub fn gauge_generator_terms(model: &Model, basis: &BasisSpec) -> Result<Vec<TermSum>> {
    model.check_basis(basis)?;
    let f = structure_constants(model.n())?;
    let cutoff = model.cutoff();
    let i = Complex64::new(0.0, 1.0);
    let mut g: Vec<TermSum> = (0..f.adj).map(|_| TermSum::zero(basis)).collect();
    let xi: Vec<TermSum> = (0..basis.n_fermion_sites)
        .map(|k| TermSum::fermion_lower(basis, k))
        .collect::<Result<_>>()?;
    for (a, b, c, v) in f.nonzero() {
        let e = v / 2f64.sqrt();
        for m in 0..2 {
            let ad = TermSum::site(basis, basis.boson_site(m, b), raising(cutoff))?;
            let an = TermSum::site(basis, basis.boson_site(m, c), lowering(cutoff))?;
            g[a] = &g[a] + &(&ad * &an).scale(i * e);
        }
        if !xi.is_empty() {
            g[a] = &g[a] + &(&xi[b].adjoint() * &xi[c]).scale(i * e);
        }
    }
    Ok(g.into_iter().map(|t| t.with_hermitian_hint(true)).collect())
}

/// `sum_a G_a^2`.
pub fn gauge_casimir_terms(model: &Model, basis: &BasisSpec) -> Result<TermSum> {
    let mut out = TermSum::zero(basis);
    for g in gauge_generator_terms(model, basis)? {
        out = &out + &g.square()?;
    }
    Ok(out.with_hermitian_hint(true))
}

pub fn build_gauge_generators(model: &Model, basis: &BasisSpec) -> Result<Vec<SparseOperator>> {
    gauge_generator_terms(model, basis)?
        .iter()
        .map(TermSum::to_sparse)
        .collect()
}

/// Hermitian SO(2) generator rotating the two matrices into each other,
/// `M = -i sum_a (a_1a^dag a_2a - a_2a^dag a_1a) - (1/2) sum_a xi_a^dag xi_a`.
pub fn so2_generator_terms(model: &Model, basis: &BasisSpec) -> Result<TermSum> {
    model.check_basis(basis)?;
    let cutoff = model.cutoff();
    let adj = basis.n_boson_sites / 2;
    let mi = Complex64::new(0.0, -1.0);
    let mut m = TermSum::zero(basis);
    for a in 0..adj {
        let s1 = basis.boson_site(0, a);
        let s2 = basis.boson_site(1, a);
        let t12 = &TermSum::site(basis, s1, raising(cutoff))? * &TermSum::site(basis, s2, lowering(cutoff))?;
        let t21 = &TermSum::site(basis, s2, raising(cutoff))? * &TermSum::site(basis, s1, lowering(cutoff))?;
        m = &m + &t12.add(&t21.scale_re(-1.0))?.scale(mi);
    }
    m = &m + &fermion_number_terms(basis)?.scale_re(-0.5);
    Ok(m.with_hermitian_hint(true))
}

pub fn build_so2_generator(model: &Model, basis: &BasisSpec) -> Result<SparseOperator> {
    so2_generator_terms(model, basis)?.to_sparse()
}

/// Discrete quarter turn `f(a_1^dag, a_2^dag)|0> -> f(-a_2^dag, a_1^dag)|0>` applied
/// to every adjoint index. On a pair of modes it sends `|p, q>` to
/// `(-1)^p |q, p>`, which respects the cutoff exactly. Fermion modes are
/// left untouched.
pub fn quarter_turn(model: &Model, basis: &BasisSpec) -> Result<SignedPermutation> {
    model.check_basis(basis)?;
    let adj = basis.n_boson_sites / 2;
    let dim = basis.dim();
    let mut target = vec![0; dim];
    let mut sign = vec![1.0; dim];
    for idx in 0..dim {
        let mut d = basis.digits(idx);
        let mut s = 1.0;
        for a in 0..adj {
            let (s1, s2) = (basis.boson_site(0, a), basis.boson_site(1, a));
            if d[s1] % 2 == 1 {
                s = -s;
            }
            d.swap(s1, s2);
        }
        target[idx] = basis.index(&d);
        sign[idx] = s;
    }
    Ok(SignedPermutation { target, sign })
}

pub fn build_quarter_turn(model: &Model, basis: &BasisSpec) -> Result<SparseOperator> {
    quarter_turn(model, basis)?.to_sparse()
}

pub fn fermion_number_terms(basis: &BasisSpec) -> Result<TermSum> {
    let mut n = TermSum::zero(basis);
    for k in 0..basis.n_fermion_sites {
        let xi = TermSum::fermion_lower(basis, k)?;
        n = &n + &(&xi.adjoint() * &xi);
    }
    Ok(n.with_hermitian_hint(true))
}

/// `(-1)^F` as a product of `Z` on every fermion mode.
pub fn fermion_parity_terms(basis: &BasisSpec) -> Result<TermSum> {
    let one = Complex64::new(1.0, 0.0);
    let z = DMatrix::from_row_slice(2, 2, &[one, 0.0 * one, 0.0 * one, -one]);
    let mut p = TermSum::identity(basis, 1.0);
    for k in 0..basis.n_fermion_sites {
        p = &p * &TermSum::site(basis, basis.fermion_site(k), z.clone())?;
    }
    Ok(p.with_hermitian_hint(true))
}

/// `H + c sum G_a^2 + cprime (M - j)^2`; zero coefficients add nothing.
pub fn deform_terms(h: &TermSum, g: &[TermSum], m: &TermSum, d: &Deformation) -> Result<TermSum> {
    d.validate()?;
    let mut out = h.clone();
    if d.c != 0.0 {
        for ga in g {
            out = out.add(&ga.square()?.scale_re(d.c))?;
        }
    }
    if d.cprime != 0.0 {
        let shifted = m.add(&m.identity_like(-d.j))?;
        out = out.add(&shifted.square()?.scale_re(d.cprime))?;
    }
    Ok(out.with_hermitian_hint(h.hermitian_hint))
}

/// Sparse-matrix form of [`deform_terms`].
pub fn deform(
    h: &SparseOperator,
    g: &[SparseOperator],
    m: &SparseOperator,
    d: &Deformation,
) -> Result<SparseOperator> {
    d.validate()?;
    let dim = h.dim();
    for o in g.iter().chain(std::iter::once(m)) {
        if o.dim() != dim {
            return Err(CoreError::DimensionMismatch {
                expected: dim,
                got: o.dim(),
            });
        }
    }
    let mut out = h.clone();
    if d.c != 0.0 {
        for ga in g {
            out = out.add(&ga.mul(ga)?.scale(Complex64::new(d.c, 0.0)))?;
        }
    }
    if d.cprime != 0.0 {
        let s = m.sub(&SparseOperator::identity(dim).scale(Complex64::new(d.j, 0.0)))?;
        out = out.add(&s.mul(&s)?.scale(Complex64::new(d.cprime, 0.0)))?;
    }
    out.hermitian_hint = h.hermitian_hint;
    Ok(out)
}
