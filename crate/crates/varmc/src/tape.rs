//! Minimal reverse-mode differentiation on a thread-local tape.

use std::cell::RefCell;
use std::ops::{Add, Mul, Neg, Sub};

/// Arithmetic shared by plain `f64` evaluation and taped evaluation.
pub trait Num:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
{
    fn cst(v: f64) -> Self;
    fn val(self) -> f64;
    fn tanh(self) -> Self;
    fn exp(self) -> Self;
    /// `sum a_k b_k`.
    fn dot(a: &[Self], b: &[Self]) -> Self;
    /// `sum a_k b_k` with constant `b`.
    fn dot_f(a: &[Self], b: &[f64]) -> Self;
}

impl Num for f64 {
    fn cst(v: f64) -> Self {
        v
    }
    fn val(self) -> f64 {
        self
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn dot(a: &[Self], b: &[Self]) -> Self {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }
    fn dot_f(a: &[Self], b: &[f64]) -> Self {
        Self::dot(a, b)
    }
}

const CONST: u32 = u32::MAX;

#[derive(Default)]
struct TapeData {
    /// Edge range per node.
    nodes: Vec<(u32, u32)>,
    edges: Vec<(u32, f64)>,
}

thread_local! {
    static TAPE: RefCell<TapeData> = RefCell::new(TapeData::default());
}

/// Taped scalar. Constants carry no node.
#[derive(Clone, Copy, Debug)]
pub struct Var {
    idx: u32,
    v: f64,
}

fn push(v: f64, edges: &[(Var, f64)]) -> Var {
    if edges.iter().all(|(x, _)| x.idx == CONST) {
        return Var { idx: CONST, v };
    }
    TAPE.with(|t| {
        let mut t = t.borrow_mut();
        let start = t.edges.len() as u32;
        for &(x, w) in edges {
            if x.idx != CONST {
                t.edges.push((x.idx, w));
            }
        }
        let end = t.edges.len() as u32;
        let idx = t.nodes.len() as u32;
        t.nodes.push((start, end));
        Var { idx, v }
    })
}

/// Handle to the thread-local tape; creating one clears it.
pub struct Tape;

impl Tape {
    pub fn new() -> Self {
        TAPE.with(|t| {
            let mut t = t.borrow_mut();
            t.nodes.clear();
            t.edges.clear();
        });
        Tape
    }

    /// A differentiable input.
    pub fn leaf(&self, v: f64) -> Var {
        TAPE.with(|t| {
            let mut t = t.borrow_mut();
            let idx = t.nodes.len() as u32;
            let e = t.edges.len() as u32;
            t.nodes.push((e, e));
            Var { idx, v }
        })
    }

    pub fn len(&self) -> usize {
        TAPE.with(|t| t.borrow().nodes.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Adjoints `d out / d node` for every node on the tape.
    pub fn adjoints(&self, out: Var) -> Vec<f64> {
        TAPE.with(|t| {
            let t = t.borrow();
            let mut adj = vec![0.0; t.nodes.len()];
            if out.idx == CONST {
                return adj;
            }
            adj[out.idx as usize] = 1.0;
            for i in (0..=out.idx as usize).rev() {
                let a = adj[i];
                if a == 0.0 {
                    continue;
                }
                let (s, e) = t.nodes[i];
                for &(p, w) in &t.edges[s as usize..e as usize] {
                    adj[p as usize] += a * w;
                }
            }
            adj
        })
    }
}

impl Default for Tape {
    fn default() -> Self {
        Self::new()
    }
}

impl Var {
    pub fn index(&self) -> Option<usize> {
        (self.idx != CONST).then_some(self.idx as usize)
    }
}

impl Add for Var {
    type Output = Var;
    fn add(self, o: Var) -> Var {
        push(self.v + o.v, &[(self, 1.0), (o, 1.0)])
    }
}

impl Sub for Var {
    type Output = Var;
    fn sub(self, o: Var) -> Var {
        push(self.v - o.v, &[(self, 1.0), (o, -1.0)])
    }
}

impl Mul for Var {
    type Output = Var;
    fn mul(self, o: Var) -> Var {
        push(self.v * o.v, &[(self, o.v), (o, self.v)])
    }
}

impl Neg for Var {
    type Output = Var;
    fn neg(self) -> Var {
        push(-self.v, &[(self, -1.0)])
    }
}

impl Add<f64> for Var {
    type Output = Var;
    fn add(self, o: f64) -> Var {
        push(self.v + o, &[(self, 1.0)])
    }
}

impl Sub<f64> for Var {
    type Output = Var;
    fn sub(self, o: f64) -> Var {
        push(self.v - o, &[(self, 1.0)])
    }
}

impl Mul<f64> for Var {
    type Output = Var;
    fn mul(self, o: f64) -> Var {
        push(self.v * o, &[(self, o)])
    }
}

impl Num for Var {
    fn cst(v: f64) -> Self {
        Var { idx: CONST, v }
    }
    fn val(self) -> f64 {
        self.v
    }
    fn tanh(self) -> Self {
        let t = self.v.tanh();
        push(t, &[(self, 1.0 - t * t)])
    }
    fn exp(self) -> Self {
        let e = self.v.exp();
        push(e, &[(self, e)])
    }
    fn dot(a: &[Self], b: &[Self]) -> Self {
        let mut edges = Vec::with_capacity(2 * a.len());
        let mut s = 0.0;
        for (x, y) in a.iter().zip(b) {
            s += x.v * y.v;
            edges.push((*x, y.v));
            edges.push((*y, x.v));
        }
        push(s, &edges)
    }
    fn dot_f(a: &[Self], b: &[f64]) -> Self {
        let edges: Vec<(Var, f64)> = a.iter().zip(b).map(|(x, &w)| (*x, w)).collect();
        push(a.iter().zip(b).map(|(x, w)| x.v * w).sum(), &edges)
    }
}
