//! File formats, configuration, reports, parallel execution and the `hypfl`
//! command line on top of [`hypfl_core`].

pub mod cli;
pub mod config;
pub mod descriptors;
pub mod error;
pub mod gfn;
pub mod parallel;
pub mod problem;
pub mod reports;

pub use error::{CliError, CliResult};
pub use gfn::{read_gfn, write_gfn, GfnError};
pub use parallel::RayonExecutor;
