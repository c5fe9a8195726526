mod compare;
mod fit;
mod lattice;
mod spectrum;
mod varmc;
mod vqe;

use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::{Failure, RunConfig, CONFIG_VERSION};

pub use compare::{compare, CompareArgs, CompareReport};
pub use fit::{fit, FitArgs};
pub use lattice::{lattice, LatticeArgs};
pub use spectrum::{spectrum, SpectrumArgs};
pub use varmc::{varmc, VarmcArgs};
pub use vqe::{vqe, VqeArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Bosonic,
    Minibmn,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Bosonic => "bosonic",
            ModelKind::Minibmn => "minibmn",
        }
    }
}

/// Defaults of an argument struct are its clap defaults, so flags and JSON
/// configs share one source.
macro_rules! clap_default {
    ($t:ty) => {
        impl Default for $t {
            fn default() -> Self {
                use clap::{Args, FromArgMatches};
                let cmd = <$t>::augment_args(clap::Command::new("defaults"));
                let m = cmd.get_matches_from(["defaults"]);
                <$t>::from_arg_matches(&m).expect("every argument has a default")
            }
        }
    };
}
pub(crate) use clap_default;

/// Creates the output directory and writes the resolved configuration.
fn prepare(dir: &Path, manifest: RunConfig) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)?;
    RunConfig {
        version: CONFIG_VERSION,
        ..manifest
    }
    .write(&dir.join("manifest.json"))
}
