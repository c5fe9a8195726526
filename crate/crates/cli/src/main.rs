use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cli::commands::{self, CompareArgs, FitArgs, LatticeArgs, SpectrumArgs, VarmcArgs, VqeArgs};
use cli::{Failure, RunConfig, EXIT_OK};

#[derive(Parser)]
#[command(name = "mqm", version, about = "Matrix quantum mechanics: truncation, VQE, lattice and variational pipelines")]
struct Cli {
    /// JSON run configuration; its block for the chosen command replaces the flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated-Hamiltonian spectra over a range of cutoffs.
    Spectrum(SpectrumArgs),
    /// Multi-start VQE on the qubit-encoded Hamiltonian.
    Vqe(VqeArgs),
    /// HMC ensemble on the Euclidean lattice.
    Lattice(LatticeArgs),
    /// Continuum extrapolation of lattice energies.
    Fit(FitArgs),
    /// Variational Monte Carlo training.
    Varmc(VarmcArgs),
    /// Cross-method comparison table from run summaries.
    Compare(CompareArgs),
}

fn block<T>(cfg: &Option<RunConfig>, pick: impl Fn(&RunConfig) -> Option<T>, flags: T, name: &str) -> Result<T, Failure> {
    match cfg {
        None => Ok(flags),
        Some(c) => pick(c).ok_or_else(|| Failure::usage(format!("config has no `{name}` block"))),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = cli.config.as_deref().map(RunConfig::load).transpose()?;
    let summary = match cli.command {
        Command::Spectrum(a) => commands::spectrum(&block(&cfg, |c| c.spectrum.clone(), a, "spectrum")?)?,
        Command::Vqe(a) => commands::vqe(&block(&cfg, |c| c.vqe.clone(), a, "vqe")?)?,
        Command::Lattice(a) => commands::lattice(&block(&cfg, |c| c.lattice.clone(), a, "lattice")?)?,
        Command::Fit(a) => commands::fit(&block(&cfg, |c| c.fit.clone(), a, "fit")?)?,
        Command::Varmc(a) => commands::varmc(&block(&cfg, |c| c.varmc.clone(), a, "varmc")?)?,
        Command::Compare(a) => {
            let r = commands::compare(&block(&cfg, |c| c.compare.clone(), a, "compare")?)?;
            print!("{}", r.markdown);
            return Ok(());
        }
    };
    println!("{}", serde_json::to_string_pretty(&summary).map_err(Failure::from)?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(EXIT_OK as u8),
        Err(e) => {
            eprintln!("mqm: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
