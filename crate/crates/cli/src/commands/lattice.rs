use std::fs::File;
use std::path::PathBuf;

use clap::Args;
use lattice_hmc::{run_chain, write_chain_csv, LatticeParams, Schedule};
use serde::{Deserialize, Serialize};

use super::{clap_default, prepare};
use crate::{Failure, Method, RunConfig, Summary};

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LatticeArgs {
    #[arg(long = "N", default_value_t = 2)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub m2: f64,
    #[arg(long = "T", default_value_t = 0.4)]
    #[serde(rename = "T")]
    pub temperature: f64,
    #[arg(long, default_value_t = 16)]
    pub nt: usize,
    /// Measured trajectories (MDTU at unit trajectory length).
    #[arg(long, default_value_t = 10_000)]
    pub mdtu: usize,
    #[arg(long, default_value_t = 1000.0)]
    pub burn_in: f64,
    #[arg(long, default_value_t = 1.0)]
    pub stride: f64,
    #[arg(long, default_value_t = 1.0)]
    pub trajectory_length: f64,
    #[arg(long, default_value_t = 0.05)]
    pub step_size: f64,
    /// Keep the initial step size instead of tuning it during burn-in.
    #[arg(long)]
    pub no_tune: bool,
    /// Drop the gauge links.
    #[arg(long)]
    pub ungauged: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "mqm-out/lattice")]
    pub out_dir: PathBuf,
}

clap_default!(LatticeArgs);

pub fn lattice(a: &LatticeArgs) -> Result<Summary, Failure> {
    let p = LatticeParams::new(a.n, a.lambda, a.m2, a.temperature, a.nt, !a.ungauged)?;
    let schedule = Schedule {
        n_traj: a.mdtu,
        burn_in_mdtu: a.burn_in,
        save_stride_mdtu: a.stride,
        trajectory_length: a.trajectory_length,
        initial_step_size: a.step_size,
        tune: !a.no_tune,
    };
    let out = run_chain(&p, &schedule, a.seed)?;
    prepare(&a.out_dir, RunConfig { lattice: Some(a.clone()), ..Default::default() })?;
    write_chain_csv(&out.records, File::create(a.out_dir.join("chain.csv"))?)?;
    let summary = Summary {
        method: Method::LatticeChain,
        model: "bosonic".into(),
        n: a.n,
        lambda: a.lambda,
        energy: out.series.mean,
        error: Some(out.series.error),
        detail: serde_json::json!({
            "T": a.temperature,
            "n_t": a.nt,
            "tau_int": out.series.tau_int,
            "acceptance": out.acceptance,
            "exp_minus_dh": [out.exp_minus_dh.0, out.exp_minus_dh.1],
            "step_size": out.integrator.step_size,
            "n_steps": out.integrator.n_steps,
        }),
    };
    summary.write(&a.out_dir)?;
    Ok(summary)
}
