use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use continuum_fit::{
    load_fixture, per_temperature_fit, read_dataset, systematic_scan, wls_polyfit, write_scan_report, Provenance,
    FIXTURES,
};
use serde::{Deserialize, Serialize};

use super::{clap_default, prepare};
use crate::{fmt9, parse_f64_list, parse_usize_list, Failure, Method, RunConfig, Summary};

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FitArgs {
    /// CSV with columns T, n_t, E, sigma_E.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Name of a shipped fixture, e.g. `lat_su2_g05`.
    #[arg(long, conflicts_with = "input")]
    pub fixture: Option<String>,
    /// Gauge group for the summary when the input is not a fixture.
    #[arg(long = "N", default_value_t = 2)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 2)]
    pub np: usize,
    #[arg(long, default_value_t = 0.10)]
    pub amax: f64,
    /// Also write the (a_max, n_p) systematics table.
    #[arg(long)]
    pub scan: bool,
    #[arg(long, default_value = "1,2,3")]
    pub scan_orders: String,
    #[arg(long, default_value = "0.05,0.10,0.20,0.30,0.40,0.50")]
    pub scan_amax: String,
    /// Also fit each temperature separately in 1/n_t.
    #[arg(long)]
    pub per_t: bool,
    /// Per-temperature fits keep n_t above this.
    #[arg(long, default_value_t = 16)]
    pub nt_cut: usize,
    #[arg(long, default_value = "mqm-out/fit")]
    pub out_dir: PathBuf,
}

clap_default!(FitArgs);

pub fn fit(a: &FitArgs) -> Result<Summary, Failure> {
    let (data, group) = match (&a.input, &a.fixture) {
        (Some(p), None) => {
            let f = File::open(p).map_err(|e| Failure::Data(anyhow::anyhow!("{}: {e}", p.display())))?;
            let stem = p.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
            let known = FIXTURES.iter().find(|f| f.0 == stem).map(|f| (f.1, f.2));
            (read_dataset(f, Provenance::OwnRun)?, known.unwrap_or((a.n, a.lambda)))
        }
        (None, Some(name)) => {
            let known = FIXTURES.iter().find(|f| f.0 == name).map(|f| (f.1, f.2));
            (load_fixture(name)?, known.unwrap_or((a.n, a.lambda)))
        }
        _ => return Err(Failure::usage("give exactly one of --input or --fixture")),
    };
    let r = wls_polyfit(&data, a.np, a.amax)?;
    prepare(&a.out_dir, RunConfig { fit: Some(a.clone()), ..Default::default() })?;
    std::fs::write(a.out_dir.join("fit.json"), serde_json::to_string_pretty(&r)? + "\n")?;
    if a.scan {
        let orders = parse_usize_list(&a.scan_orders)?;
        let grid = parse_f64_list(&a.scan_amax)?;
        let cells = systematic_scan(&data, &orders, &grid)?;
        write_scan_report(&cells, File::create(a.out_dir.join("scan.csv"))?)?;
    }
    if a.per_t {
        let mut w = File::create(a.out_dir.join("per_t.csv"))?;
        writeln!(w, "T,E,sigma_E,chi2_per_point")?;
        for p in per_temperature_fit(&data, a.np, a.nt_cut) {
            match p.result {
                Ok(f) => writeln!(w, "{},{},{},{}", p.t, fmt9(f.e), fmt9(f.sigma_e), fmt9(f.chi2_per_point))?,
                Err(_) => writeln!(w, "{},,,", p.t)?,
            }
        }
    }
    let summary = Summary {
        method: Method::Lattice,
        model: "bosonic".into(),
        n: group.0,
        lambda: group.1,
        energy: r.e,
        error: Some(r.sigma_e),
        detail: serde_json::json!({
            "n_p": r.n_p,
            "a_max": a.amax,
            "n_points": r.n_points,
            "chi2_dof": r.chi2_dof,
            "chi2_per_point": r.chi2_per_point,
        }),
    };
    summary.write(&a.out_dir)?;
    Ok(summary)
}
