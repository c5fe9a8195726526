use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::tape::Num;
use crate::{Result, VarmcError};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Autoregressive product of Gaussian conditionals over `dim` coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AutoregressiveAnsatz {
    pub dim: usize,
    pub hidden: usize,
    /// All weights and biases, conditioner by conditioner.
    pub params: Vec<f64>,
    offsets: Vec<usize>,
}

/// `log p` and its coordinate derivatives.
#[derive(Clone, Debug)]
pub struct Derivatives<T> {
    pub log_p: T,
    /// `d log p / dx_j`.
    pub d1: Vec<T>,
    /// `d^2 log p / dx_j^2`.
    pub d2: Vec<T>,
}

struct Cond<T> {
    mu: T,
    s: T,
    /// Per input direction `j < i`: first and second derivatives.
    dmu: Vec<T>,
    ds: Vec<T>,
    d2mu: Vec<T>,
    d2s: Vec<T>,
}

/// Jets carried through the network: 0 none, 1 first, 2 second order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Order {
    Value,
    First,
    Second,
}

fn block_len(i: usize, h: usize) -> usize {
    h * i + h + h * h + h + 2 * h + 2
}

impl AutoregressiveAnsatz {
    /// Hidden width `alpha * dim`. Output layers start at zero with the
    /// log-scale bias at `ln(init_sigma)`, so the initial density is an
    /// isotropic Gaussian; hidden layers are small random.
    pub fn new(dim: usize, alpha: f64, init_sigma: f64, seed: u64) -> Result<Self> {
        if dim == 0 || !(alpha > 0.0) || !(init_sigma > 0.0) {
            return Err(VarmcError::InvalidConfig("dim, alpha and init_sigma must be positive".into()));
        }
        let hidden = ((alpha * dim as f64).round() as usize).max(1);
        let mut a = Self::zeros(dim, hidden);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for i in 0..dim {
            let o = a.offsets[i];
            let h = hidden;
            let w1 = 0.5 / (i.max(1) as f64).sqrt();
            for k in 0..h * i {
                a.params[o + k] = w1 * rng.sample::<f64, _>(StandardNormal);
            }
            let o2 = o + h * i + h;
            let w2 = 0.5 / (h as f64).sqrt();
            for k in 0..h * h {
                a.params[o2 + k] = w2 * rng.sample::<f64, _>(StandardNormal);
            }
            let ob3 = o + block_len(i, h) - 2;
            a.params[ob3 + 1] = init_sigma.ln();
        }
        Ok(a)
    }

    fn zeros(dim: usize, hidden: usize) -> Self {
        let mut offsets = Vec::with_capacity(dim + 1);
        let mut o = 0;
        for i in 0..dim {
            offsets.push(o);
            o += block_len(i, hidden);
        }
        offsets.push(o);
        Self {
            dim,
            hidden,
            params: vec![0.0; o],
            offsets,
        }
    }

    /// Independent Gaussians with fixed location and log-scale per coordinate.
    pub fn frozen_gaussian(loc: &[f64], log_scale: &[f64], hidden: usize) -> Self {
        let mut a = Self::zeros(loc.len(), hidden.max(1));
        for i in 0..loc.len() {
            let ob3 = a.offsets[i] + block_len(i, a.hidden) - 2;
            a.params[ob3] = loc[i];
            a.params[ob3 + 1] = log_scale[i];
        }
        a
    }

    pub fn n_params(&self) -> usize {
        self.params.len()
    }

    /// Parameter slice of conditioner `i`.
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Output-layer index of the location (`0`) or log-scale (`1`) bias of
    /// conditioner `i`.
    pub fn output_bias(&self, i: usize, which: usize) -> usize {
        self.offsets[i + 1] - 2 + which
    }

    /// Output-layer weight from hidden unit `k` to output `which` of
    /// conditioner `i`.
    pub fn output_weight(&self, i: usize, which: usize, k: usize) -> usize {
        self.offsets[i + 1] - 2 - 2 * self.hidden + which * self.hidden + k
    }

    fn conditioner<T: Num>(&self, theta: &[T], i: usize, x: &[f64], order: Order) -> Cond<T> {
        let h = self.hidden;
        let o = self.offsets[i];
        let w1 = &theta[o..o + h * i];
        let b1 = &theta[o + h * i..o + h * i + h];
        let o2 = o + h * i + h;
        let w2 = &theta[o2..o2 + h * h];
        let b2 = &theta[o2 + h * h..o2 + h * h + h];
        let o3 = o2 + h * h + h;
        let w3 = &theta[o3..o3 + 2 * h];
        let b3 = &theta[o3 + 2 * h..o3 + 2 * h + 2];
        let z = &x[..i];

        let t1: Vec<T> = (0..h).map(|k| (T::dot_f(&w1[k * i..(k + 1) * i], z) + b1[k]).tanh()).collect();
        let g1: Vec<T> = t1.iter().map(|&t| -(t * t) + 1.0).collect();
        let t2: Vec<T> = (0..h).map(|k| (T::dot(&w2[k * h..(k + 1) * h], &t1) + b2[k]).tanh()).collect();
        let mu = T::dot(&w3[..h], &t2) + b3[0];
        let s = T::dot(&w3[h..], &t2) + b3[1];
        let mut c = Cond {
            mu,
            s,
            dmu: Vec::new(),
            ds: Vec::new(),
            d2mu: Vec::new(),
            d2s: Vec::new(),
        };
        if order == Order::Value || i == 0 {
            return c;
        }
        let g2: Vec<T> = t2.iter().map(|&t| -(t * t) + 1.0).collect();
        for j in 0..i {
            let h1d: Vec<T> = (0..h).map(|k| g1[k] * w1[k * i + j]).collect();
            let a2d: Vec<T> = (0..h).map(|k| T::dot(&w2[k * h..(k + 1) * h], &h1d)).collect();
            let h2d: Vec<T> = (0..h).map(|k| g2[k] * a2d[k]).collect();
            c.dmu.push(T::dot(&w3[..h], &h2d));
            c.ds.push(T::dot(&w3[h..], &h2d));
            if order == Order::Second {
                let h1dd: Vec<T> = (0..h)
                    .map(|k| t1[k] * g1[k] * w1[k * i + j] * w1[k * i + j] * -2.0)
                    .collect();
                let a2dd: Vec<T> = (0..h).map(|k| T::dot(&w2[k * h..(k + 1) * h], &h1dd)).collect();
                let h2dd: Vec<T> = (0..h)
                    .map(|k| g2[k] * (a2dd[k] - t2[k] * a2d[k] * a2d[k] * 2.0))
                    .collect();
                c.d2mu.push(T::dot(&w3[..h], &h2dd));
                c.d2s.push(T::dot(&w3[h..], &h2dd));
            }
        }
        c
    }

    /// `log p(x)` with first and (optionally) diagonal second derivatives,
    /// generic over the scalar so the same code runs taped.
    pub(crate) fn derivatives_generic<T: Num>(&self, theta: &[T], x: &[f64], order: Order) -> Derivatives<T> {
        let d = self.dim;
        let mut log_p = T::cst(-HALF_LN_2PI * d as f64);
        let mut d1 = vec![T::cst(0.0); if order >= Order::First { d } else { 0 }];
        let mut d2 = vec![T::cst(0.0); if order == Order::Second { d } else { 0 }];
        for i in 0..d {
            let c = self.conditioner(theta, i, x, order);
            let inv = (-c.s).exp();
            let u = (-c.mu + x[i]) * inv;
            log_p = log_p - c.s - u * u * 0.5;
            if order == Order::Value {
                continue;
            }
            d1[i] = d1[i] - u * inv;
            if order == Order::Second {
                d2[i] = d2[i] - inv * inv;
            }
            for j in 0..i {
                let du = -(c.dmu[j] * inv) - u * c.ds[j];
                d1[j] = d1[j] - c.ds[j] - u * du;
                if order == Order::Second {
                    let d2u = -(c.d2mu[j] * inv) + c.dmu[j] * c.ds[j] * inv - du * c.ds[j] - u * c.d2s[j];
                    d2[j] = d2[j] - c.d2s[j] - du * du - u * d2u;
                }
            }
        }
        Derivatives { log_p, d1, d2 }
    }

    pub fn log_density(&self, x: &[f64]) -> Result<f64> {
        let v = self.derivatives_generic(&self.params, x, Order::Value).log_p;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(VarmcError::NonFiniteOutput("log_density"))
        }
    }

    /// `log p` with its gradient and Laplacian diagonal in `x`.
    pub fn derivatives(&self, x: &[f64]) -> Derivatives<f64> {
        self.derivatives_generic(&self.params, x, Order::Second)
    }

    /// Location and scale of coordinate `i` given `x[..i]`.
    pub fn conditional(&self, i: usize, x: &[f64]) -> (f64, f64) {
        let c = self.conditioner(&self.params, i, x, Order::Value);
        (c.mu, c.s.exp())
    }

    /// Ancestral sampling from standard normal noise `z`.
    pub fn transform(&self, z: &[f64]) -> Vec<f64> {
        let mut x = vec![0.0; self.dim];
        for i in 0..self.dim {
            let (mu, sigma) = self.conditional(i, &x);
            x[i] = mu + sigma * z[i];
        }
        x
    }

    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<Vec<f64>> {
        (0..n)
            .map(|_| {
                let z: Vec<f64> = (0..self.dim).map(|_| rng.sample(StandardNormal)).collect();
                self.transform(&z)
            })
            .collect()
    }

    /// `d log p(x) / d theta` by direct backpropagation, accumulated into
    /// `grad` with weight `w`.
    pub fn accumulate_score(&self, x: &[f64], w: f64, grad: &mut [f64]) {
        let h = self.hidden;
        for i in 0..self.dim {
            let o = self.offsets[i];
            let p = &self.params;
            let (w1, b1) = (o, o + h * i);
            let (w2, b2) = (b1 + h, b1 + h + h * h);
            let (w3, b3) = (b2 + h, b2 + 3 * h);
            let z = &x[..i];
            let t1: Vec<f64> = (0..h)
                .map(|k| (f64::dot_f(&p[w1 + k * i..w1 + (k + 1) * i], z) + p[b1 + k]).tanh())
                .collect();
            let t2: Vec<f64> = (0..h)
                .map(|k| (f64::dot(&p[w2 + k * h..w2 + (k + 1) * h], &t1) + p[b2 + k]).tanh())
                .collect();
            let mu = f64::dot(&p[w3..w3 + h], &t2) + p[b3];
            let s = f64::dot(&p[w3 + h..w3 + 2 * h], &t2) + p[b3 + 1];
            let inv = (-s).exp();
            let u = (x[i] - mu) * inv;
            let dmu = w * u * inv;
            let ds = w * (u * u - 1.0);
            grad[b3] += dmu;
            grad[b3 + 1] += ds;
            let mut dt2 = vec![0.0; h];
            for k in 0..h {
                grad[w3 + k] += dmu * t2[k];
                grad[w3 + h + k] += ds * t2[k];
                dt2[k] = dmu * p[w3 + k] + ds * p[w3 + h + k];
            }
            let da2: Vec<f64> = (0..h).map(|k| dt2[k] * (1.0 - t2[k] * t2[k])).collect();
            let mut dt1 = vec![0.0; h];
            for k in 0..h {
                grad[b2 + k] += da2[k];
                for l in 0..h {
                    grad[w2 + k * h + l] += da2[k] * t1[l];
                    dt1[l] += da2[k] * p[w2 + k * h + l];
                }
            }
            for l in 0..h {
                let da1 = dt1[l] * (1.0 - t1[l] * t1[l]);
                grad[b1 + l] += da1;
                for j in 0..i {
                    grad[w1 + l * i + j] += da1 * z[j];
                }
            }
        }
    }

    /// Text checkpoint: a version line, a shape line, then one parameter per
    /// line.
    pub fn save<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "varmc-ansatz 1")?;
        writeln!(w, "{} {} {}", self.dim, self.hidden, self.params.len())?;
        for v in &self.params {
            writeln!(w, "{v:e}")?;
        }
        Ok(())
    }

    pub fn load<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let mut next = || -> Result<String> {
            lines
                .next()
                .ok_or_else(|| VarmcError::Checkpoint("truncated file".into()))?
                .map_err(VarmcError::from)
        };
        if next()?.trim() != "varmc-ansatz 1" {
            return Err(VarmcError::Checkpoint("unknown header".into()));
        }
        let shape: Vec<usize> = next()?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| VarmcError::Checkpoint("bad shape".into())))
            .collect::<Result<_>>()?;
        if shape.len() != 3 {
            return Err(VarmcError::Checkpoint("bad shape".into()));
        }
        let mut a = Self::zeros(shape[0], shape[1]);
        if a.params.len() != shape[2] {
            return Err(VarmcError::Checkpoint("parameter count does not match shape".into()));
        }
        for v in a.params.iter_mut() {
            *v = next()?
                .trim()
                .parse()
                .map_err(|_| VarmcError::Checkpoint("bad number".into()))?;
        }
        Ok(a)
    }
}
