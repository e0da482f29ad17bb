//! Three-term large-`n` expansion of the parity-class eigenvalues and the
//! deviations of computed spectra from it.
//!
//! For label `n` the expansion reads
//!
//! ```text
//! E_n^± ≈ n - g² ± C (-1)^n cos(θ_n) / n^{1/4},   θ_n = 4g√n - π/4,   C = Δ/√(2πg)
//! ```
//!
//! with the `+` sign for the Plus class of [`crate::model::build_truncated`].

use crate::eigensolver::EigenvalueRecord;
use crate::model::{ModelParams, ParityClass};
use crate::{Error, Result, Scalar};

/// Residuals below this are numerical noise and skipped by [`decay_slope`].
pub const RESIDUAL_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationSample<T> {
    pub label: usize,
    pub parity: ParityClass,
    /// `n^{1/4} (E_n - (n - g²))`.
    pub deviation: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSample<T> {
    pub label: usize,
    pub parity: ParityClass,
    /// `E_n` minus the three-term value.
    pub residual: T,
}

/// `θ_n = 4g√n - π/4`.
pub fn theta<T: Scalar>(n: usize, g: T) -> T {
    T::lit(4.0) * g * T::from_count(n).sqrt() - T::FRAC_PI_4()
}

/// Fractional part of `φ_n = (2g/π)√n - 1/8`, so that `cos(2πφ_n) = cos(θ_n)`.
pub fn fractional_phase<T: Scalar>(n: usize, g: T) -> T {
    let phase = T::lit(2.0) * g / T::PI() * T::from_count(n).sqrt() - T::lit(0.125);
    fractional_part(phase)
}

/// `x - ⌊x⌋`, clamped into `[0, 1)`.
pub fn fractional_part<T: Scalar>(x: T) -> T {
    let f = x - x.floor();
    if f >= T::one() {
        T::zero()
    } else {
        f
    }
}

/// Sign multiplying `C (-1)^n cos θ_n / n^{1/4}` in each parity class.
pub fn correction_sign<T: Scalar>(parity: ParityClass) -> T {
    match parity {
        ParityClass::Plus => T::one(),
        ParityClass::Minus => -T::one(),
    }
}

/// The oscillating term `E_n^± - (n - g²)` of the expansion.
pub fn bz_correction<T: Scalar>(n: usize, parity: ParityClass, params: &ModelParams<T>) -> T {
    let alternating = if n.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    };
    correction_sign::<T>(parity) * params.amplitude() * alternating * theta(n, params.g()).cos()
        / T::from_count(n).powf(T::lit(0.25))
}

/// Three-term value of `E_n^±`, without remainder.
pub fn bz_eigenvalue<T: Scalar>(
    n: usize,
    parity: ParityClass,
    params: &ModelParams<T>,
) -> Result<T> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    Ok(T::from_count(n) - params.g_squared() + bz_correction(n, parity, params))
}

pub fn deviation<T: Scalar>(
    record: &EigenvalueRecord<T>,
    params: &ModelParams<T>,
) -> DeviationSample<T> {
    let n = T::from_count(record.label);
    DeviationSample {
        label: record.label,
        parity: record.parity,
        deviation: n.powf(T::lit(0.25)) * (record.value - (n - params.g_squared())),
    }
}

pub fn residual<T: Scalar>(
    record: &EigenvalueRecord<T>,
    params: &ModelParams<T>,
) -> Result<ResidualSample<T>> {
    Ok(ResidualSample {
        label: record.label,
        parity: record.parity,
        residual: record.value - bz_eigenvalue(record.label, record.parity, params)?,
    })
}

/// Least-squares slope of `log|residual|` against `log n`, over samples
/// whose label lies in `[lo, hi]` and whose residual exceeds
/// [`RESIDUAL_FLOOR`]. `None` if fewer than two samples survive.
pub fn decay_slope<T: Scalar>(samples: &[ResidualSample<T>], lo: usize, hi: usize) -> Option<f64> {
    let points: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| (lo..=hi).contains(&s.label))
        .filter_map(|s| {
            let r = s.residual.abs().to_f64()?;
            (r >= RESIDUAL_FLOOR).then(|| ((s.label as f64).ln(), r.ln()))
        })
        .collect();
    least_squares_slope(&points)
}

/// Slope of the ordinary least-squares line through `points`.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
