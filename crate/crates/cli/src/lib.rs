//! Library side of the `mqm` binary: argument/config types, one function per
//! subcommand, and the exit-code mapping.

pub mod commands;
mod config;
mod error;
mod summary;

pub use config::{parse_f64_list, parse_usize_list, RunConfig, CONFIG_VERSION};
pub use error::{Failure, EXIT_DATA, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE};
pub use summary::{fmt9, read_summaries, Method, Summary};
