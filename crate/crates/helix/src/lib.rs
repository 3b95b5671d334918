//! Command-line front end for the `helix-core` tube machine: graph and
//! codebook loading, trace files, reports and the `helix` subcommands.

pub mod commands;
pub mod config;
pub mod error;
pub mod formats;
pub mod random;
pub mod report;

pub use config::RunConfig;
pub use error::{CliError, Result};
