use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde::{Deserialize, Serialize};

use super::{clap_default, prepare, ModelKind};
use crate::{fmt9, parse_f64_list, read_summaries, Failure, Method, RunConfig, Summary};

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CompareArgs {
    /// `summary.json` files or run directories containing one.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "bosonic")]
    pub model: ModelKind,
    #[arg(long = "N", default_value_t = 2)]
    #[serde(rename = "N")]
    pub n: usize,
    #[arg(long, default_value = "0.5,1.0,2.0")]
    pub lambdas: String,
    /// Largest allowed |varmc - HT|.
    #[arg(long, default_value_t = 0.07)]
    pub varmc_tolerance: f64,
    /// Allowed |lattice - HT| in units of the lattice error.
    #[arg(long, default_value_t = 3.0)]
    pub lattice_sigmas: f64,
    #[arg(long, default_value = "mqm-out/compare")]
    pub out_dir: PathBuf,
}

clap_default!(CompareArgs);

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub lambda: f64,
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareReport {
    pub markdown: String,
    pub checks: Vec<Check>,
    /// Missing inputs and empty table cells.
    pub gaps: Vec<String>,
}

const ROWS: [(Method, &str); 4] = [
    (Method::Ht, "HT"),
    (Method::Varmc, "DL"),
    (Method::Lattice, "MC"),
    (Method::Vqe, "VQE"),
];

fn cell(s: Option<&Summary>) -> String {
    match s {
        None => "n/a".into(),
        Some(s) => match s.error {
            Some(e) => format!("{} ± {}", fmt9(s.energy), fmt9(e)),
            None => fmt9(s.energy),
        },
    }
}

/// Method-by-coupling table with pairwise agreement checks against HT.
pub fn compare(a: &CompareArgs) -> Result<CompareReport, Failure> {
    let lambdas = parse_f64_list(&a.lambdas)?;
    let (summaries, mut gaps) = read_summaries(&a.inputs)?;
    let find = |m: Method, l: f64| {
        summaries
            .iter()
            .filter(|s| s.method == m && s.model == a.model.name() && s.n == a.n && (s.lambda - l).abs() < 1e-9)
            .last()
    };
    let mut md = String::new();
    writeln!(md, "| SU({}) {} | {} |", a.n, a.model.name(), lambdas.iter().map(|l| format!("λ = {l}")).collect::<Vec<_>>().join(" | ")).unwrap();
    writeln!(md, "|---|{}", "---|".repeat(lambdas.len())).unwrap();
    if a.model == ModelKind::Minibmn {
        writeln!(md, "| exact | {} |", vec!["0 (supersymmetric)"; lambdas.len()].join(" | ")).unwrap();
    }
    let mut csv = String::from("method,lambda,energy,error\n");
    for (m, label) in ROWS {
        let cells: Vec<String> = lambdas
            .iter()
            .map(|&l| {
                let s = find(m, l);
                match s {
                    Some(s) => {
                        let err = s.error.map(fmt9).unwrap_or_default();
                        csv.push_str(&format!("{label},{l},{},{err}\n", fmt9(s.energy)));
                    }
                    None => gaps.push(format!("no {label} result at lambda = {l}")),
                }
                cell(s)
            })
            .collect();
        writeln!(md, "| {label} | {} |", cells.join(" | ")).unwrap();
    }
    let mut checks = Vec::new();
    for &l in &lambdas {
        let Some(ht) = find(Method::Ht, l) else { continue };
        if let Some(v) = find(Method::Varmc, l) {
            checks.push(Check { lambda: l, name: format!("|DL - HT| <= {}", a.varmc_tolerance), pass: (v.energy - ht.energy).abs() <= a.varmc_tolerance });
        }
        if let Some(mc) = find(Method::Lattice, l) {
            let sigma = mc.error.unwrap_or(0.0);
            checks.push(Check { lambda: l, name: format!("|MC - HT| <= {} sigma", a.lattice_sigmas), pass: (mc.energy - ht.energy).abs() <= a.lattice_sigmas * sigma });
        }
        if let Some(q) = find(Method::Vqe, l) {
            checks.push(Check { lambda: l, name: "VQE >= HT".into(), pass: q.energy >= ht.energy - 1e-9 });
        }
    }
    if !checks.is_empty() {
        writeln!(md).unwrap();
        for c in &checks {
            writeln!(md, "- λ = {}: {} {}", c.lambda, c.name, if c.pass { "ok" } else { "FAILED" }).unwrap();
        }
    }
    if !gaps.is_empty() {
        writeln!(md, "\nGaps:").unwrap();
        for g in &gaps {
            writeln!(md, "- {g}").unwrap();
        }
    }
    prepare(&a.out_dir, RunConfig { compare: Some(a.clone()), ..Default::default() })?;
    std::fs::write(a.out_dir.join("report.md"), &md)?;
    std::fs::write(a.out_dir.join("report.csv"), csv)?;
    Ok(CompareReport { markdown: md, checks, gaps })
}
