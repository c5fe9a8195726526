use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{minimize, Objective, Optimizer, Result, VqeError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub best: f64,
    pub theta: Vec<f64>,
    pub trace: Vec<f64>,
}

/// Statistics of the best energies over independent restarts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub runs: Vec<RunRecord>,
}

impl RunStats {
    pub fn best_run(&self) -> &RunRecord {
        self.runs
            .iter()
            .min_by(|a, b| a.best.total_cmp(&b.best))
            .expect("at least one run")
    }
}

/// `n_restarts` minimizations from `theta0` uniform on `[0, 2 pi)^P`; restart
/// `k` draws from stream `k` of the seeded generator.
pub fn multi_start(
    obj: &Objective,
    optimizer: Optimizer,
    n_restarts: usize,
    max_iters: usize,
    seed: u64,
) -> Result<RunStats> {
    if n_restarts == 0 {
        return Err(VqeError::InvalidRequest("need at least one restart".into()));
    }
    let p = obj.spec().n_params();
    let mut runs = Vec::with_capacity(n_restarts);
    for k in 0..n_restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let theta0: Vec<f64> = (0..p)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        let r = minimize(obj, optimizer, &theta0, max_iters)?;
        runs.push(RunRecord {
            best: r.value,
            theta: r.theta,
            trace: r.trace,
        });
    }
    let best: Vec<f64> = runs.iter().map(|r| r.best).collect();
    let mean = best.iter().sum::<f64>() / best.len() as f64;
    let var = best.iter().map(|b| (b - mean).powi(2)).sum::<f64>() / best.len() as f64;
    Ok(RunStats {
        min: best.iter().cloned().fold(f64::INFINITY, f64::min),
        max: best.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        mean,
        std: var.sqrt(),
        runs,
    })
}
