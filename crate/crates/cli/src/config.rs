//! Command-line arguments and the validated run configuration.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rabi_core::{Options, Params};

use crate::error::{CliError, Result};

/// Cache directory used when `--cache-dir` is not given.
pub const DEFAULT_CACHE_DIR: &str = ".rabi-cache";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Labeled eigenvalues of both parity classes.
    Spectrum,
    /// Occupancy of the intervals (n, n+1) by shifted eigenvalues.
    Classify,
    /// Nearest-neighbour spacing types of the merged spectrum.
    Spacings,
    /// Normalized deviations against the arcsine law.
    Arcsine,
    /// Bad-set counts and equidistribution of ((4g/π)√n + 1/4).
    Badset,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Classify => "classify",
            Command::Spacings => "spacings",
            Command::Arcsine => "arcsine",
            Command::Badset => "badset",
        }
    }
}

#[derive(Debug, Clone, Parser)]
#[command(
    name = "rabi",
    version,
    about = "Spectral statistics of the quantum Rabi model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coupling strength g.
    #[arg(
        long,
        global = true,
        allow_negative_numbers = true,
        default_value_t = 0.7
    )]
    pub g: f64,

    /// Level splitting Δ.
    #[arg(
        long,
        global = true,
        allow_negative_numbers = true,
        default_value_t = 0.4
    )]
    pub delta: f64,

    /// Largest label N.
    #[arg(long, global = true, default_value_t = 2000)]
    pub n_max: usize,

    /// Exponent δ in the goodness threshold N^(-1/4+δ).
    #[arg(
        long,
        global = true,
        allow_negative_numbers = true,
        default_value_t = 0.05
    )]
    pub delta_exp: f64,

    /// Bisection tolerance.
    #[arg(
        long,
        global = true,
        allow_negative_numbers = true,
        default_value_t = 1e-10
    )]
    pub tol: f64,

    /// Truncation convergence tolerance.
    #[arg(
        long,
        global = true,
        allow_negative_numbers = true,
        default_value_t = 1e-8
    )]
    pub trunc_tol: f64,

    /// Distance from an interval endpoint counted as a boundary hit.
    #[arg(
        long,
        global = true,
        allow_negative_numbers = true,
        default_value_t = 1e-6
    )]
    pub boundary_eps: f64,

    /// Gaps below this are degenerate.
    #[arg(
        long,
        global = true,
        allow_negative_numbers = true,
        default_value_t = 1e-9
    )]
    pub tie_tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Neither read nor write the spectrum cache.
    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: Params,
    pub max_label: usize,
    pub delta_exp: f64,
    pub eigen_tol: f64,
    pub trunc_tol: f64,
    pub boundary_eps: f64,
    pub tie_tol: f64,
    pub format: Format,
    /// `None` disables caching.
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let params = Params::new(cli.g, cli.delta).map_err(|e| CliError::Config(e.to_string()))?;
        if cli.n_max == 0 {
            return Err(CliError::Config("--n-max must be at least 1".into()));
        }
        if !(cli.delta_exp > 0.0 && cli.delta_exp < 0.25) {
            return Err(CliError::Config(format!(
                "--delta-exp {} must lie in (0, 1/4)",
                cli.delta_exp
            )));
        }
        for (flag, value) in [
            ("--tol", cli.tol),
            ("--trunc-tol", cli.trunc_tol),
            ("--boundary-eps", cli.boundary_eps),
            ("--tie-tol", cli.tie_tol),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(CliError::Config(format!("{flag} {value} must be positive")));
            }
        }
        let cache_dir = if cli.no_cache {
            None
        } else {
            Some(
                cli.cache_dir
                    .clone()
                    .unwrap_or_else(|| DEFAULT_CACHE_DIR.into()),
            )
        };
        Ok(Self {
            params,
            max_label: cli.n_max,
            delta_exp: cli.delta_exp,
            eigen_tol: cli.tol,
            trunc_tol: cli.trunc_tol,
            boundary_eps: cli.boundary_eps,
            tie_tol: cli.tie_tol,
            format: cli.format,
            cache_dir,
        })
    }

    pub fn solver_options(&self) -> Options {
        Options {
            eigen_tol: self.eigen_tol,
            trunc_tol: self.trunc_tol,
            ..Options::default()
        }
    }
}
