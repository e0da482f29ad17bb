//! Command-line front end for the Rabi spectral toolkit: computes and caches
//! parity-class spectra, runs the report pipelines, and renders the reports
//! as CSV or JSON.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod provider;
pub mod report;

use std::path::Path;

pub use config::{Cli, Command, Format, RunConfig};
pub use error::{CliError, Result};
pub use provider::SpectrumProvider;
pub use report::Report;

/// Rendered output of one invocation.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub output: String,
    /// Eigensolver invocations made while producing it.
    pub solver_calls: usize,
}

/// Validates the arguments, runs the command and renders its report. The
/// report is also written to `--out` when given.
pub fn run(cli: &Cli) -> Result<Outcome> {
    let config = RunConfig::from_cli(cli)?;
    let provider = SpectrumProvider::for_config(&config);
    let report = commands::execute(cli.command, &config, &provider)?;
    let output = report.render(config.format)?;
    if let Some(path) = &cli.out {
        write_report(path, &output)?;
    }
    Ok(Outcome {
        output,
        solver_calls: provider.solver_calls(),
    })
}

fn write_report(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}
