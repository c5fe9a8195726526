use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use models::{build_bosonic_hamiltonian, build_minibmn_hamiltonian, BosonicParams, Deformation, MiniBmnParams, Model};
use qubit_map::encode_fock;
use serde::{Deserialize, Serialize};
use spectrum::{solve_model, EigenOptions};
use vqe::{multi_start, AnsatzForm, AnsatzSpec, Gradient, Objective, Optimizer};

use super::{clap_default, prepare, ModelKind};
use crate::{fmt9, parse_usize_list, Failure, Method, RunConfig, Summary};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    Ry,
    Ryrz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimizerKind {
    /// Nelder-Mead.
    Nm,
    /// BFGS with central-difference gradients.
    BfgsFd,
    /// BFGS with exact adjoint gradients.
    Bfgs,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VqeArgs {
    #[arg(long, value_enum, default_value = "bosonic")]
    pub model: ModelKind,
    #[arg(long = "N", default_value_t = 2)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 0.2)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    /// Fock cutoff per boson; must be a power of two.
    #[arg(long, default_value_t = 2)]
    pub cutoff: usize,
    #[arg(long, value_enum, default_value = "ry")]
    pub form: Form,
    /// Circuit depths, `3` or `1..9`.
    #[arg(long, default_value = "3")]
    pub depths: String,
    #[arg(long, default_value_t = 100)]
    pub restarts: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    #[arg(long, value_enum, default_value = "nm")]
    pub optimizer: OptimizerKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "mqm-out/vqe")]
    pub out_dir: PathBuf,
}

clap_default!(VqeArgs);

pub fn vqe(a: &VqeArgs) -> Result<Summary, Failure> {
    let depths = parse_usize_list(&a.depths)?;
    let (model, h) = match a.model {
        ModelKind::Bosonic => {
            let p = BosonicParams { n: a.n, m2: a.m2, lambda: a.lambda, cutoff: a.cutoff };
            let basis = p.basis()?;
            (Model::Bosonic(p), encode_fock(&build_bosonic_hamiltonian(&p, &basis)?, &basis)?)
        }
        ModelKind::Minibmn => {
            let p = MiniBmnParams { n: a.n, mu: a.mu, lambda: a.lambda, cutoff: a.cutoff };
            let basis = p.basis()?;
            (Model::MiniBmn(p), encode_fock(&build_minibmn_hamiltonian(&p, &basis)?, &basis)?)
        }
    };
    let exact = solve_model(&model, &Deformation::default(), 1, &EigenOptions { tol: 1e-10, ..Default::default() })?[0].energy;
    let form = match a.form {
        Form::Ry => AnsatzForm::Ry,
        Form::Ryrz => AnsatzForm::RyRz,
    };
    let optimizer = match a.optimizer {
        OptimizerKind::Nm => Optimizer::nelder_mead(),
        OptimizerKind::BfgsFd => Optimizer::quasi_newton_fd(),
        OptimizerKind::Bfgs => Optimizer::QuasiNewton { gradient: Gradient::Adjoint },
    };
    prepare(&a.out_dir, RunConfig { vqe: Some(a.clone()), ..Default::default() })?;
    let mut table = csv::Writer::from_writer(File::create(a.out_dir.join("stats.csv"))?);
    table.write_record(["depth", "n_params", "min", "max", "mean", "std", "exact"])?;
    let mut best = f64::INFINITY;
    let mut per_depth = Vec::new();
    for &depth in &depths {
        let spec = AnsatzSpec::new(h.n_qubits(), form, depth)?;
        let obj = Objective::new(&h, spec)?;
        let s = multi_start(&obj, optimizer, a.restarts, a.max_iters, a.seed)?;
        table.write_record([
            depth.to_string(),
            spec.n_params().to_string(),
            fmt9(s.min),
            fmt9(s.max),
            fmt9(s.mean),
            fmt9(s.std),
            fmt9(exact),
        ])?;
        let mut trace = File::create(a.out_dir.join(format!("trace_depth{depth}.csv")))?;
        writeln!(trace, "restart,iteration,best")?;
        for (k, r) in s.runs.iter().enumerate() {
            for (it, v) in r.trace.iter().enumerate() {
                writeln!(trace, "{k},{it},{}", fmt9(*v))?;
            }
        }
        best = best.min(s.min);
        per_depth.push(serde_json::json!({"depth": depth, "min": s.min, "mean": s.mean, "std": s.std}));
    }
    table.flush()?;
    let summary = Summary {
        method: Method::Vqe,
        model: a.model.name().into(),
        n: a.n,
        lambda: a.lambda,
        energy: best,
        error: None,
        detail: serde_json::json!({"cutoff": a.cutoff, "exact": exact, "depths": per_depth}),
    };
    summary.write(&a.out_dir)?;
    Ok(summary)
}
