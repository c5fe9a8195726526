use std::fs::File;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use varmc::{
    gauge_casimir_estimate, local_energy, singlet_expectation, train, write_history_csv, AutoregressiveAnsatz,
    CoordinateModel, GradientMode, Optimizer, TrainConfig,
};

use super::{clap_default, prepare};
use crate::{Failure, Method, RunConfig, Summary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizerKind {
    Sgd,
    Adam,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VarmcArgs {
    #[arg(long = "N", default_value_t = 2)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m2: f64,
    /// Hidden width over input dimension.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub init_sigma: f64,
    #[arg(long, default_value_t = 0.05)]
    pub learning_rate: f64,
    #[arg(long, default_value_t = 512)]
    pub batch_size: usize,
    #[arg(long, default_value_t = 500)]
    pub steps: usize,
    /// Gauge Casimir penalty coefficient.
    #[arg(long, default_value_t = 0.0)]
    pub penalty: f64,
    #[arg(long, value_enum, default_value = "sgd")]
    pub optimizer: OptimizerKind,
    /// Samples for the final energy estimate.
    #[arg(long, default_value_t = 20_000)]
    pub eval_samples: usize,
    /// Also estimate the gauge-projected energy.
    #[arg(long)]
    pub singlet: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "mqm-out/varmc")]
    pub out_dir: PathBuf,
}

clap_default!(VarmcArgs);

pub fn varmc(a: &VarmcArgs) -> Result<Summary, Failure> {
    let model = CoordinateModel::bosonic(a.n, a.m2, a.lambda)?;
    let mut ansatz = AutoregressiveAnsatz::new(model.dim(), a.alpha, a.init_sigma, a.seed)?;
    let cfg = TrainConfig {
        learning_rate: a.learning_rate,
        batch_size: a.batch_size,
        steps: a.steps,
        penalty: a.penalty,
        seed: a.seed,
        clip: Some(10.0),
        optimizer: match a.optimizer {
            OptimizerKind::Sgd => Optimizer::Sgd,
            OptimizerKind::Adam => Optimizer::Adam { beta1: 0.9, beta2: 0.999 },
        },
        mode: GradientMode::ScoreOnly,
    };
    if a.eval_samples < 2 {
        return Err(Failure::usage("eval-samples must be at least 2"));
    }
    let history = train(&mut ansatz, &model, &cfg)?;
    prepare(&a.out_dir, RunConfig { varmc: Some(a.clone()), ..Default::default() })?;
    write_history_csv(&history, File::create(a.out_dir.join("history.csv"))?)?;
    ansatz.save(File::create(a.out_dir.join("ansatz.txt"))?)?;

    let mut rng = ChaCha8Rng::seed_from_u64(a.seed ^ 0x9e37_79b9_7f4a_7c15);
    let batch = ansatz.sample(a.eval_samples, &mut rng);
    let e = batch
        .iter()
        .map(|x| local_energy(&ansatz, x, &model))
        .collect::<Result<Vec<f64>, _>>()?;
    let n = e.len() as f64;
    let mean = e.iter().sum::<f64>() / n;
    let var = e.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let (casimir, casimir_err) = gauge_casimir_estimate(&ansatz, &model, &batch)?;
    let singlet = if a.singlet {
        let s = singlet_expectation(&ansatz, &model, |x| local_energy(&ansatz, x, &model), a.eval_samples, &mut rng)?;
        serde_json::json!({"energy": s.value, "error": s.error})
    } else {
        serde_json::Value::Null
    };
    let summary = Summary {
        method: Method::Varmc,
        model: "bosonic".into(),
        n: a.n,
        lambda: a.lambda,
        energy: mean,
        error: Some((var / n).sqrt()),
        detail: serde_json::json!({
            "alpha": a.alpha,
            "casimir": casimir,
            "casimir_error": casimir_err,
            "singlet": singlet,
        }),
    };
    summary.write(&a.out_dir)?;
    Ok(summary)
}
