use crate::ansatz::{AutoregressiveAnsatz, Derivatives, Order};
use crate::tape::{Num, Tape, Var};
use crate::{CoordinateModel, Result, VarmcError};

/// Which terms of the energy gradient to estimate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum GradientMode {
    /// `mean[(eps - E) d log p]`; the `mean[d eps]` term vanishes in
    /// expectation for a real wave function and is dropped.
    ScoreOnly,
    /// `mean[d eps] + mean[(eps - E) d log p]`.
    Full,
}

fn kinetic<T: Num>(d: &Derivatives<T>) -> T {
    // -1/2 sum (d^2 log psi + (d log psi)^2) with log psi = log p / 2.
    let mut k = T::cst(0.0);
    for (a, b) in d.d2.iter().zip(&d.d1) {
        k = k + *a * 0.5 + *b * *b * 0.25;
    }
    k * -0.5
}

fn half<T: Num>(v: &[T]) -> Vec<T> {
    v.iter().map(|&x| x * 0.5).collect()
}

/// `<X|H|psi> / psi(X)`.
pub fn local_energy(a: &AutoregressiveAnsatz, x: &[f64], m: &CoordinateModel) -> Result<f64> {
    let d = a.derivatives(x);
    let e = kinetic(&d) + m.potential(x);
    if e.is_finite() {
        Ok(e)
    } else {
        Err(VarmcError::NonFiniteOutput("local_energy"))
    }
}

fn mean_err(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = if v.len() > 1 {
        v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    (mean, (var / n).sqrt())
}

/// Mean and standard error of the local `sum_a G_a^2` over a batch.
pub fn gauge_casimir_estimate(
    a: &AutoregressiveAnsatz,
    m: &CoordinateModel,
    batch: &[Vec<f64>],
) -> Result<(f64, f64)> {
    let v: Vec<f64> = batch
        .iter()
        .map(|x| {
            let d = a.derivatives_generic(&a.params, x, Order::First);
            m.casimir_local(x, &half(&d.d1))
        })
        .collect();
    if v.iter().any(|x| !x.is_finite()) {
        return Err(VarmcError::NonFiniteOutput("gauge casimir"));
    }
    Ok(mean_err(&v))
}

#[derive(Clone, Debug)]
pub struct EnergyGrad {
    /// Mean local energy of `H`.
    pub energy: f64,
    pub stderr: f64,
    /// Mean local `sum G^2`.
    pub casimir: f64,
    /// Mean of `eps + c G^2`.
    pub objective: f64,
    pub grad: Vec<f64>,
    /// Per-sample local energies.
    pub local: Vec<f64>,
}

/// Energy, Casimir and the gradient of `E + c <G^2>` over a batch drawn from
/// the ansatz.
pub fn energy_and_grad(
    a: &AutoregressiveAnsatz,
    batch: &[Vec<f64>],
    m: &CoordinateModel,
    penalty: f64,
    mode: GradientMode,
) -> Result<EnergyGrad> {
    if batch.is_empty() {
        return Err(VarmcError::InvalidConfig("empty batch".into()));
    }
    let np = a.n_params();
    let b = batch.len() as f64;
    let taped = mode == GradientMode::Full || penalty != 0.0;
    let mut direct = vec![0.0; np];
    let mut eps = Vec::with_capacity(batch.len());
    let mut cas = Vec::with_capacity(batch.len());
    for x in batch {
        if taped {
            let tape = Tape::new();
            let theta: Vec<Var> = a.params.iter().map(|&v| tape.leaf(v)).collect();
            let order = if mode == GradientMode::Full { Order::Second } else { Order::First };
            let d = a.derivatives_generic(&theta, x, order);
            let g = m.casimir_local(x, &half(&d.d1));
            let (e_val, out) = if mode == GradientMode::Full {
                let e = kinetic(&d) + m.potential(x);
                (e.val(), e + g * penalty)
            } else {
                (local_energy(a, x, m)?, g * penalty)
            };
            let adj = tape.adjoints(out);
            for (k, t) in theta.iter().enumerate() {
                direct[k] += adj[t.index().unwrap()] / b;
            }
            eps.push(e_val);
            cas.push(g.val());
        } else {
            let d = a.derivatives(x);
            eps.push(kinetic(&d) + m.potential(x));
            cas.push(if penalty != 0.0 { m.casimir_local(x, &half(&d.d1)) } else { 0.0 });
        }
    }
    if eps.iter().chain(&cas).any(|v| !v.is_finite()) {
        return Err(VarmcError::NonFiniteOutput("energy_and_grad"));
    }
    let obj: Vec<f64> = eps.iter().zip(&cas).map(|(e, g)| e + penalty * g).collect();
    let (obj_mean, _) = mean_err(&obj);
    let mut grad = direct;
    for (x, o) in batch.iter().zip(&obj) {
        a.accumulate_score(x, (o - obj_mean) / b, &mut grad);
    }
    let (energy, stderr) = mean_err(&eps);
    let casimir = if penalty != 0.0 || taped {
        mean_err(&cas).0
    } else {
        gauge_casimir_estimate(a, m, batch)?.0
    };
    Ok(EnergyGrad {
        energy,
        stderr,
        casimir,
        objective: obj_mean,
        grad,
        local: eps,
    })
}
