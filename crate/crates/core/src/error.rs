use thiserror::Error;

use crate::model::ParityClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("index {index} out of range (valid: {min}..={max})")]
    IndexOutOfRange {
        index: usize,
        min: usize,
        max: usize,
    },

    #[error("truncation dimension must be at least 1")]
    EmptyTruncation,

    #[error("malformed tridiagonal matrix: {0}")]
    MalformedMatrix(String),

    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),

    #[error(
        "{parity} spectrum did not converge below tolerance {tol:e} by dimension {max_dim} \
         (last movement {movement:e})"
    )]
    NoConvergence {
        parity: ParityClass,
        tol: f64,
        max_dim: usize,
        movement: f64,
    },

    #[error("label calibration needs at least {needed} eigenvalues, got {got}")]
    TooFewForCalibration { needed: usize, got: usize },

    #[error("ambiguous label offset: {best} and {runner_up} have median deviations {best_dev} and {runner_up_dev}")]
    AmbiguousLabelOffset {
        best: i64,
        runner_up: i64,
        best_dev: f64,
        runner_up_dev: f64,
    },

    #[error("calibrated labels do not cover 1..={max_label} for the {parity} class")]
    LabelCoverage {
        parity: ParityClass,
        max_label: usize,
    },

    #[error("interval ({n}, {n}+1) needs labels {lo}..={hi}, table covers 1..={max_label}")]
    IntervalNotCovered {
        n: usize,
        lo: i64,
        hi: i64,
        max_label: usize,
    },

    #[error("pattern window for n = {0} must hold the intervals starting at n-1, n, n+1")]
    MalformedWindow(usize),

    #[error("exponent {0} outside (0, 1/4)")]
    InvalidExponent(f64),

    #[error("invalid range cap {0}; need at least 2")]
    InvalidRangeCap(usize),

    #[error("malformed interval [{alpha}, {beta}]; need 0 <= alpha <= beta <= 1")]
    MalformedInterval { alpha: f64, beta: f64 },

    #[error("{0} must not be empty")]
    Empty(&'static str),
}
