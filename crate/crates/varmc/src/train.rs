use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{energy_and_grad, AutoregressiveAnsatz, CoordinateModel, GradientMode, Result, VarmcError};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Optimizer {
    /// `theta <- theta - beta grad`.
    Sgd,
    Adam { beta1: f64, beta2: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub batch_size: usize,
    pub steps: usize,
    /// Coefficient `c` of the gauge Casimir penalty.
    pub penalty: f64,
    pub seed: u64,
    /// Gradient norm clip; `None` disables clipping.
    pub clip: Option<f64>,
    pub optimizer: Optimizer,
    pub mode: GradientMode,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.05,
            batch_size: 512,
            steps: 500,
            penalty: 0.0,
            seed: 0,
            clip: Some(10.0),
            optimizer: Optimizer::Sgd,
            mode: GradientMode::ScoreOnly,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0) {
            return Err(VarmcError::InvalidConfig("learning rate must be positive".into()));
        }
        if self.batch_size < 16 {
            return Err(VarmcError::InvalidConfig("batch size must be at least 16".into()));
        }
        if self.penalty < 0.0 {
            return Err(VarmcError::InvalidConfig("penalty must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistoryRow {
    pub step: usize,
    pub energy: f64,
    pub stderr: f64,
    pub casimir: f64,
}

/// Gradient descent on `E + c <G^2>`. Fails with `Diverged` once the energy
/// has stayed above ten times its initial value for 100 steps.
pub fn train(a: &mut AutoregressiveAnsatz, m: &CoordinateModel, cfg: &TrainConfig) -> Result<Vec<HistoryRow>> {
    cfg.validate()?;
    if a.dim != m.dim() {
        return Err(VarmcError::InvalidConfig(format!(
            "ansatz has {} coordinates, model needs {}",
            a.dim,
            m.dim()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let np = a.n_params();
    let (mut m1, mut m2) = (vec![0.0; np], vec![0.0; np]);
    let mut history = Vec::with_capacity(cfg.steps);
    let mut first: Option<f64> = None;
    let mut above = 0usize;
    for step in 0..cfg.steps {
        let batch = a.sample(cfg.batch_size, &mut rng);
        let eg = energy_and_grad(a, &batch, m, cfg.penalty, cfg.mode)?;
        history.push(HistoryRow {
            step,
            energy: eg.energy,
            stderr: eg.stderr,
            casimir: eg.casimir,
        });
        let e0 = *first.get_or_insert(eg.energy);
        if eg.energy > 10.0 * e0.abs() {
            above += 1;
            if above >= 100 {
                return Err(VarmcError::Diverged(step));
            }
        } else {
            above = 0;
        }
        let mut g = eg.grad;
        if let Some(c) = cfg.clip {
            let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > c {
                g.iter_mut().for_each(|v| *v *= c / norm);
            }
        }
        match cfg.optimizer {
            Optimizer::Sgd => {
                for (p, gi) in a.params.iter_mut().zip(&g) {
                    *p -= cfg.learning_rate * gi;
                }
            }
            Optimizer::Adam { beta1, beta2 } => {
                let t = (step + 1) as i32;
                let (c1, c2) = (1.0 - beta1.powi(t), 1.0 - beta2.powi(t));
                for k in 0..np {
                    m1[k] = beta1 * m1[k] + (1.0 - beta1) * g[k];
                    m2[k] = beta2 * m2[k] + (1.0 - beta2) * g[k] * g[k];
                    a.params[k] -= cfg.learning_rate * (m1[k] / c1) / ((m2[k] / c2).sqrt() + 1e-8);
                }
            }
        }
    }
    Ok(history)
}

/// CSV with columns `step,energy,stderr,casimir`.
pub fn write_history_csv<W: Write>(rows: &[HistoryRow], w: W) -> Result<()> {
    let mut wr = csv::Writer::from_writer(w);
    for r in rows {
        wr.serialize(r)?;
    }
    wr.flush()?;
    Ok(())
}
