use std::fs::File;
use std::path::PathBuf;

use clap::Args;
use models::{BosonicParams, MiniBmnParams, Model};
use serde::{Deserialize, Serialize};
use spectrum::{truncation_scan, write_scan_csv, Coefficient, EigenOptions, Penalty};

use super::{clap_default, prepare, ModelKind};
use crate::{parse_usize_list, Failure, Method, RunConfig, Summary};

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SpectrumArgs {
    #[arg(long, value_enum, default_value = "bosonic")]
    pub model: ModelKind,
    #[arg(long = "N", default_value_t = 2)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 0.2)]
    pub lambda: f64,
    /// Bosonic mass squared.
    #[arg(long, default_value_t = 1.0)]
    pub m2: f64,
    /// Minimal BMN mass.
    #[arg(long, default_value_t = 1.0)]
    pub mu: f64,
    /// Cutoffs, `3..8` or `3,5,7`.
    #[arg(long, default_value = "3..8")]
    pub cutoffs: String,
    #[arg(long, default_value_t = 1)]
    pub levels: usize,
    /// Gauge penalty: a number or `auto` for c = cutoff.
    #[arg(long, default_value = "0")]
    pub c: String,
    /// Angular-momentum penalty: a number or `auto`.
    #[arg(long, default_value = "0")]
    pub cprime: String,
    #[arg(long = "J", default_value_t = 0.0)]
    #[serde(rename = "J")]
    pub j: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value = "mqm-out/spectrum")]
    pub out_dir: PathBuf,
}

clap_default!(SpectrumArgs);

fn coefficient(s: &str) -> Result<Coefficient, Failure> {
    if s.trim() == "auto" {
        return Ok(Coefficient::PerCutoff(1.0));
    }
    s.trim()
        .parse()
        .map(Coefficient::Fixed)
        .map_err(|_| Failure::usage(format!("penalty must be a number or `auto`, got {s:?}")))
}

pub fn spectrum(a: &SpectrumArgs) -> Result<Summary, Failure> {
    let cutoffs = parse_usize_list(&a.cutoffs)?;
    let penalty = Penalty {
        c: coefficient(&a.c)?,
        cprime: coefficient(&a.cprime)?,
        j: a.j,
    };
    let first = cutoffs[0];
    let model = match a.model {
        ModelKind::Bosonic => Model::Bosonic(BosonicParams {
            n: a.n,
            m2: a.m2,
            lambda: a.lambda,
            cutoff: first,
        }),
        ModelKind::Minibmn => Model::MiniBmn(MiniBmnParams {
            n: a.n,
            mu: a.mu,
            lambda: a.lambda,
            cutoff: first,
        }),
    };
    if let Model::MiniBmn(p) = &model {
        for w in p.validate()? {
            eprintln!("warning: {w}");
        }
    }
    let opts = EigenOptions {
        tol: a.tol,
        ..Default::default()
    };
    let out = truncation_scan(&model, &cutoffs, a.levels, &penalty, &opts)?;
    prepare(&a.out_dir, RunConfig { spectrum: Some(a.clone()), ..Default::default() })?;
    write_scan_csv(&out.rows, File::create(a.out_dir.join("scan.csv"))?)?;
    let last = out.rows.iter().rev().find(|r| r.level == 0).expect("scan has rows");
    let summary = Summary {
        method: Method::Ht,
        model: a.model.name().into(),
        n: a.n,
        lambda: a.lambda,
        energy: last.energy,
        error: out.e0_diff.last().map(|d| d.1),
        detail: serde_json::json!({
            "cutoff": last.cutoff,
            "g2": last.g2,
            "e0_diff": out.e0_diff,
        }),
    };
    summary.write(&a.out_dir)?;
    Ok(summary)
}
