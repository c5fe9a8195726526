use models::BosonicParams;
use nalgebra::DMatrix;
use operator_core::{generators, structure_constants, Complex64};

use crate::tape::Num;
use crate::Result;

/// Two-matrix bosonic Hamiltonian in the real coordinates `x_{I a}`,
/// `X_I = sum_a x_{I a} tau_a`, flattened as `I * adj + a`.
#[derive(Clone, Debug)]
pub struct CoordinateModel {
    pub n: usize,
    pub adj: usize,
    pub m2: f64,
    /// `g^2 = lambda / N`.
    pub g2: f64,
    /// Nonzero `(a, b, c, f_abc)`.
    f: Vec<(usize, usize, usize, f64)>,
    pub(crate) generators: Vec<DMatrix<Complex64>>,
}

pub const FLAVORS: usize = 2;

impl CoordinateModel {
    pub fn new(p: &BosonicParams) -> Result<Self> {
        p.validate()?;
        let f = structure_constants(p.n)?;
        Ok(Self {
            n: p.n,
            adj: f.adj,
            m2: p.m2,
            g2: p.g2(),
            f: f.nonzero(),
            generators: generators(p.n)?,
        })
    }

    /// Model without a Fock cutoff, which the coordinate picture does not need.
    pub fn bosonic(n: usize, m2: f64, lambda: f64) -> Result<Self> {
        Self::new(&BosonicParams { n, m2, lambda, cutoff: 2 })
    }

    pub fn dim(&self) -> usize {
        FLAVORS * self.adj
    }

    /// `m^2/2 sum x^2 + g^2/2 sum_c (sum_ab f_abc x_1a x_2b)^2`.
    pub fn potential(&self, x: &[f64]) -> f64 {
        let mass = 0.5 * self.m2 * x.iter().map(|v| v * v).sum::<f64>();
        let mut k = vec![0.0; self.adj];
        let (x1, x2) = x.split_at(self.adj);
        for &(a, b, c, f) in &self.f {
            k[c] += f * x1[a] * x2[b];
        }
        mass + 0.5 * self.g2 * k.iter().map(|v| v * v).sum::<f64>()
    }

    /// `sum_a (sum_{I,b,c} (f_abc/sqrt 2) x_Ib d_Ic log psi)^2`, the local
    /// value of `sum_a G_a^2` given `d log psi`.
    pub fn casimir_local<T: Num>(&self, x: &[f64], dlogpsi: &[T]) -> T {
        let mut acc: Vec<Option<T>> = vec![None; self.adj];
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..FLAVORS {
            let o = i * self.adj;
            for &(a, b, c, f) in &self.f {
                let term = dlogpsi[o + c] * (s * f * x[o + b]);
                acc[a] = Some(match acc[a] {
                    Some(v) => v + term,
                    None => term,
                });
            }
        }
        let mut out = T::cst(0.0);
        for v in acc.into_iter().flatten() {
            out = out + v * v;
        }
        out
    }
}
