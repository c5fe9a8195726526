use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::commands::{CompareArgs, FitArgs, LatticeArgs, SpectrumArgs, VarmcArgs, VqeArgs};
use crate::Failure;

pub const CONFIG_VERSION: u32 = 1;

/// JSON run configuration: a version and one optional block per command.
/// Unknown keys are rejected at every level.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumArgs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vqe: Option<VqeArgs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeArgs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit: Option<FitArgs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub varmc: Option<VarmcArgs>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compare: Option<CompareArgs>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| Failure::usage(format!("config {}: {e}", path.display())))?;
        if cfg.version != CONFIG_VERSION {
            return Err(Failure::usage(format!(
                "config version {} is not supported (expected {CONFIG_VERSION})",
                cfg.version
            )));
        }
        Ok(cfg)
    }

    pub fn write(&self, path: &Path) -> Result<(), Failure> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

/// `"3..8"` (inclusive) or `"3,4,6"`.
pub fn parse_usize_list(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || Failure::usage(format!("cannot parse integer list {s:?}"));
    let s = s.trim();
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        (a..=b).collect()
    } else {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err(Failure::usage(format!("empty list {s:?}")));
    }
    Ok(out)
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>, Failure> {
    let out: Vec<f64> = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Failure::usage(format!("cannot parse number list {s:?}"))))
        .collect::<Result<_, _>>()?;
    if out.is_empty() {
        return Err(Failure::usage(format!("empty list {s:?}")));
    }
    Ok(out)
}
