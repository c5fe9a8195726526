use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{BasisSpec, CompiledOperator, CoreError, Result, Scalar, SparseOperator};

/// Dense single-site matrix.
pub type LocalOp = DMatrix<Complex64>;

/// `coeff * prod_s factors[s]`, identity on every site not listed.
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Complex64,
    /// Site-sorted, at most one factor per site.
    pub factors: Vec<(usize, LocalOp)>,
}

impl Term {
    pub fn sites(&self) -> Vec<usize> {
        self.factors.iter().map(|(s, _)| *s).collect()
    }
}

/// Sum of products of single-site operators.
///
/// This is the symbolic form every model is assembled in. Products merge
/// factors site by site, so fermion sign strings must be written out
/// explicitly (see [`TermSum::fermion_lower`]).
#[derive(Clone, Debug)]
pub struct TermSum {
    local_dims: Vec<usize>,
    pub terms: Vec<Term>,
    pub hermitian_hint: bool,
}

fn is_identity(m: &LocalOp) -> bool {
    m.is_square()
        && m.iter().enumerate().all(|(k, v)| {
            let (r, c) = (k % m.nrows(), k / m.nrows());
            *v == if r == c {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
}

impl TermSum {
    pub fn zero(basis: &BasisSpec) -> Self {
        Self {
            local_dims: (0..basis.n_sites()).map(|s| basis.local_dim(s)).collect(),
            terms: Vec::new(),
            hermitian_hint: true,
        }
    }

    /// `c * I`.
    pub fn identity(basis: &BasisSpec, c: f64) -> Self {
        let mut z = Self::zero(basis);
        z.terms.push(Term {
            coeff: Complex64::new(c, 0.0),
            factors: Vec::new(),
        });
        z
    }

    /// `c * I` on the same space as `self`.
    pub fn identity_like(&self, c: f64) -> Self {
        Self {
            local_dims: self.local_dims.clone(),
            terms: vec![Term {
                coeff: Complex64::new(c, 0.0),
                factors: Vec::new(),
            }],
            hermitian_hint: true,
        }
    }

    /// A single operator on one site.
    pub fn site(basis: &BasisSpec, site: usize, op: LocalOp) -> Result<Self> {
        let mut z = Self::zero(basis);
        if site >= z.local_dims.len() {
            return Err(CoreError::InvalidParameter(format!("site {site} out of range")));
        }
        if op.nrows() != z.local_dims[site] || op.ncols() != z.local_dims[site] {
            return Err(CoreError::DimensionMismatch {
                expected: z.local_dims[site],
                got: op.nrows(),
            });
        }
        z.hermitian_hint = op == op.adjoint();
        z.terms.push(Term {
            coeff: Complex64::new(1.0, 0.0),
            factors: vec![(site, op)],
        });
        Ok(z)
    }

    /// Jordan-Wigner lowering operator of fermion `k`.
    pub fn fermion_lower(basis: &BasisSpec, k: usize) -> Result<Self> {
        if k >= basis.n_fermion_sites {
            return Err(CoreError::InvalidParameter(format!(
                "fermion index {k} out of range"
            )));
        }
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let z = DMatrix::from_row_slice(2, 2, &[one, zero, zero, -one]);
        let lower = DMatrix::from_row_slice(2, 2, &[zero, one, zero, zero]);
        let mut factors: Vec<_> = (0..k).map(|j| (basis.fermion_site(j), z.clone())).collect();
        factors.push((basis.fermion_site(k), lower));
        let mut t = Self::zero(basis);
        t.hermitian_hint = false;
        t.terms.push(Term { coeff: one, factors });
        Ok(t)
    }

    pub fn local_dims(&self) -> &[usize] {
        &self.local_dims
    }

    pub fn dim(&self) -> usize {
        self.local_dims.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.local_dims == other.local_dims {
            Ok(())
        } else {
            Err(CoreError::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out.hermitian_hint = self.hermitian_hint && other.hermitian_hint;
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.terms.iter_mut().for_each(|t| t.coeff *= c);
        out.hermitian_hint &= c.im == 0.0;
        out
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    /// Operator product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self {
            local_dims: self.local_dims.clone(),
            terms: Vec::with_capacity(self.terms.len() * other.terms.len()),
            hermitian_hint: false,
        };
        for a in &self.terms {
            for b in &other.terms {
                if let Some(t) = mul_terms(a, b) {
                    out.terms.push(t);
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.coeff = t.coeff.conj();
            for (_, f) in &mut t.factors {
                *f = f.adjoint();
            }
        }
        out
    }

    /// `self * self`, flagged Hermitian when `self` is.
    pub fn square(&self) -> Result<Self> {
        let mut s = self.mul(self)?;
        s.hermitian_hint = self.hermitian_hint;
        Ok(s)
    }

    pub fn with_hermitian_hint(mut self, h: bool) -> Self {
        self.hermitian_hint = h;
        self
    }

    pub fn compile<T: Scalar>(&self) -> Result<CompiledOperator<T>> {
        CompiledOperator::new(self)
    }

    /// Explicit sparse matrix. Intended for moderate dimensions.
    pub fn to_sparse(&self) -> Result<SparseOperator> {
        let c: CompiledOperator<Complex64> = self.compile()?;
        SparseOperator::from_triplets(self.dim(), c.triplets(), self.hermitian_hint)
    }

    /// Groups terms by their site sets. Terms whose sites are a subset of an
    /// earlier (larger) set are folded into it.
    pub(crate) fn grouped(&self) -> Vec<(Vec<usize>, Vec<&Term>)> {
        let mut by_set: BTreeMap<Vec<usize>, Vec<&Term>> = BTreeMap::new();
        for t in &self.terms {
            by_set.entry(t.sites()).or_default().push(t);
        }
        let mut sets: Vec<Vec<usize>> = by_set.keys().cloned().collect();
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
        let mut groups: Vec<(Vec<usize>, Vec<&Term>)> = Vec::new();
        for s in sets {
            let terms = by_set.remove(&s).unwrap();
            match groups
                .iter_mut()
                .find(|(g, _)| s.iter().all(|x| g.binary_search(x).is_ok()))
            {
                Some((_, ts)) => ts.extend(terms),
                None => groups.push((s, terms)),
            }
        }
        groups
    }
}

fn mul_terms(a: &Term, b: &Term) -> Option<Term> {
    let mut factors = Vec::with_capacity(a.factors.len() + b.factors.len());
    let (mut i, mut j) = (0, 0);
    while i < a.factors.len() || j < b.factors.len() {
        let sa = a.factors.get(i).map(|f| f.0).unwrap_or(usize::MAX);
        let sb = b.factors.get(j).map(|f| f.0).unwrap_or(usize::MAX);
        if sa < sb {
            factors.push(a.factors[i].clone());
            i += 1;
        } else if sb < sa {
            factors.push(b.factors[j].clone());
            j += 1;
        } else {
            let p = &a.factors[i].1 * &b.factors[j].1;
            if p.iter().all(|v| v.norm_sqr() == 0.0) {
                return None;
            }
            if !is_identity(&p) {
                factors.push((sa, p));
            }
            i += 1;
            j += 1;
        }
    }
    Some(Term {
        coeff: a.coeff * b.coeff,
        factors,
    })
}

impl std::ops::Add for &TermSum {
    type Output = TermSum;
    fn add(self, rhs: &TermSum) -> TermSum {
        TermSum::add(self, rhs).expect("operands share a basis")
    }
}

impl std::ops::Mul for &TermSum {
    type Output = TermSum;
    fn mul(self, rhs: &TermSum) -> TermSum {
        TermSum::mul(self, rhs).expect("operands share a basis")
    }
}
