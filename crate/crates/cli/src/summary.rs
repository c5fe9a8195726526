use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Hamiltonian truncation.
    Ht,
    Vqe,
    /// Variational Monte Carlo.
    Varmc,
    /// Continuum-extrapolated lattice result.
    Lattice,
    /// Single lattice ensemble at finite spacing.
    LatticeChain,
}

/// Headline number of one run, written as `summary.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub method: Method,
    pub model: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub lambda: f64,
    pub energy: f64,
    pub error: Option<f64>,
    #[serde(default)]
    pub detail: serde_json::Value,
}

impl Summary {
    pub fn write(&self, dir: &Path) -> Result<(), Failure> {
        std::fs::write(dir.join("summary.json"), serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

/// Nine significant digits.
pub fn fmt9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (8 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Summaries from files, or from `summary.json` directly inside directories.
/// Missing paths are reported back rather than failing.
pub fn read_summaries(paths: &[PathBuf]) -> Result<(Vec<Summary>, Vec<String>), Failure> {
    let mut found = Vec::new();
    let mut gaps = Vec::new();
    for p in paths {
        let file = if p.is_dir() { p.join("summary.json") } else { p.clone() };
        if !file.exists() {
            gaps.push(format!("missing artifact {}", file.display()));
            continue;
        }
        let text = std::fs::read_to_string(&file)?;
        let s: Summary = serde_json::from_str(&text)
            .map_err(|e| Failure::Data(anyhow::anyhow!("{}: {e}", file.display())))?;
        found.push(s);
    }
    Ok((found, gaps))
}
