//! Parity-class spectra of the quantum Rabi model.
//!
//! The Rabi Hamiltonian splits into two parity classes, each represented by an
//! infinite Jacobi matrix. This crate truncates those matrices, computes their
//! low-lying eigenvalues by Sturm-sequence bisection, and provides the
//! statistics used to study the fine structure of the spectrum: the
//! three-term large-`n` expansion, interval occupancy of shifted eigenvalues,
//! nearest-neighbour spacing types, the arcsine law for normalized deviations,
//! and equidistribution counts for fractional parts of `a√n + γ`.
//!
//! All numerical code is generic over a [`Scalar`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`, which is what the command-line
//! tooling uses.

// `!(x > 0)` is how parameter checks reject NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod braak;
pub mod eigensolver;
mod error;
pub mod model;
mod scalar;
pub mod statistics;

pub use error::{Error, Result};
pub use model::{ModelParams, ParityClass, TridiagonalMatrix};
pub use scalar::Scalar;

pub type Params = model::ModelParams<f64>;
pub type Tridiagonal = model::TridiagonalMatrix<f64>;
pub type Record = eigensolver::EigenvalueRecord<f64>;
pub type Spectrum = eigensolver::SpectrumTable<f64>;
pub type Options = eigensolver::SolverOptions<f64>;
pub type Classification = braak::IntervalClassification<f64>;
pub type Ecdf = statistics::EcdfTable<f64>;

pub type ParamsF32 = model::ModelParams<f32>;
pub type TridiagonalF32 = model::TridiagonalMatrix<f32>;
