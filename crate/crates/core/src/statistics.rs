//! Nearest-neighbour spacing types of the merged spectrum and the arcsine law
//! for normalized deviations.

use crate::asymptotics::deviation;
use crate::eigensolver::SpectrumTable;
use crate::model::{ModelParams, ParityClass};
use crate::{Error, Result, Scalar};

/// Default gap below which two neighbouring eigenvalues count as tied.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;

/// Labels below this are left out of the deviation ECDF by default.
pub const DEFAULT_MIN_LABEL: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergedEntry<T> {
    pub value: T,
    pub parity: ParityClass,
    pub label: usize,
}

/// Both parity spectra in one increasing sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct MergedSpectrum<T> {
    pub entries: Vec<MergedEntry<T>>,
    /// Positions `i` with `entries[i + 1].value - entries[i].value < tie_tol`.
    pub ties: Vec<usize>,
}

impl<T: Scalar> MergedSpectrum<T> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Merges two increasing sequences, labelling entries `1, 2, …` within each
/// parity. On exact equality the Plus entry comes first; either way the tie
/// is reported.
pub fn merge_sequences<T: Scalar>(plus: &[T], minus: &[T], tie_tol: T) -> MergedSpectrum<T> {
    let mut entries = Vec::with_capacity(plus.len() + minus.len());
    let (mut i, mut j) = (0, 0);
    while i < plus.len() || j < minus.len() {
        let take_plus = j == minus.len() || (i < plus.len() && plus[i] <= minus[j]);
        if take_plus {
            entries.push(MergedEntry {
                value: plus[i],
                parity: ParityClass::Plus,
                label: i + 1,
            });
            i += 1;
        } else {
            entries.push(MergedEntry {
                value: minus[j],
                parity: ParityClass::Minus,
                label: j + 1,
            });
            j += 1;
        }
    }
    let ties = entries
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1].value - w[0].value < tie_tol)
        .map(|(i, _)| i)
        .collect();
    MergedSpectrum { entries, ties }
}

pub fn merge_spectra<T: Scalar>(table: &SpectrumTable<T>, tie_tol: T) -> MergedSpectrum<T> {
    let values = |parity| -> Vec<T> { table.records(parity).iter().map(|r| r.value).collect() };
    merge_sequences(
        &values(ParityClass::Plus),
        &values(ParityClass::Minus),
        tie_tol,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpacingKind {
    Positive,
    Negative,
    Mixed,
}

impl SpacingKind {
    pub fn between(lower: ParityClass, upper: ParityClass) -> Self {
        match (lower, upper) {
            (ParityClass::Plus, ParityClass::Plus) => SpacingKind::Positive,
            (ParityClass::Minus, ParityClass::Minus) => SpacingKind::Negative,
            _ => SpacingKind::Mixed,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SpacingKind::Positive => "positive",
            SpacingKind::Negative => "negative",
            SpacingKind::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacingRecord<T> {
    /// Index of the lower eigenvalue in the merged order.
    pub position: usize,
    pub gap: T,
    pub kind: SpacingKind,
    pub degenerate: bool,
}

pub fn classify_spacings<T: Scalar>(
    merged: &[MergedEntry<T>],
    tie_tol: T,
) -> Vec<SpacingRecord<T>> {
    merged
        .windows(2)
        .enumerate()
        .map(|(position, w)| {
            let gap = w[1].value - w[0].value;
            SpacingRecord {
                position,
                gap,
                kind: SpacingKind::between(w[0].parity, w[1].parity),
                degenerate: gap < tie_tol,
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyReport {
    pub positive: usize,
    pub negative: usize,
    pub mixed: usize,
    /// Degenerate gaps left out of the frequencies.
    pub excluded: usize,
}

impl FrequencyReport {
    pub fn total(&self) -> usize {
        self.positive + self.negative + self.mixed
    }

    pub fn f_positive(&self) -> f64 {
        self.positive as f64 / self.total() as f64
    }

    pub fn f_negative(&self) -> f64 {
        self.negative as f64 / self.total() as f64
    }

    pub fn f_mixed(&self) -> f64 {
        self.mixed as f64 / self.total() as f64
    }
}

/// Fractions of positive, negative and mixed gaps among the non-degenerate ones.
pub fn spacing_frequencies<T>(records: &[SpacingRecord<T>]) -> Result<FrequencyReport> {
    let mut report = FrequencyReport {
        positive: 0,
        negative: 0,
        mixed: 0,
        excluded: 0,
    };
    for r in records {
        if r.degenerate {
            report.excluded += 1;
            continue;
        }
        match r.kind {
            SpacingKind::Positive => report.positive += 1,
            SpacingKind::Negative => report.negative += 1,
            SpacingKind::Mixed => report.mixed += 1,
        }
    }
    if report.total() == 0 {
        return Err(Error::Empty("spacing records"));
    }
    Ok(report)
}

/// CDF of the arcsine law on `[-C, C]`, `C = Δ/√(2πg)`:
/// `1/2 + arcsin(y/C)/π`. At `Δ = 0` this degenerates to a unit step at 0.
pub fn arcsine_cdf<T: Scalar>(y: T, params: &ModelParams<T>) -> T {
    arcsine_cdf_with_support(y, params.amplitude())
}

pub fn arcsine_cdf_with_support<T: Scalar>(y: T, c: T) -> T {
    if c <= T::zero() {
        return if y < T::zero() { T::zero() } else { T::one() };
    }
    if y <= -c {
        T::zero()
    } else if y >= c {
        T::one()
    } else {
        T::lit(0.5) + (y / c).asin() / T::PI()
    }
}

/// Inverse of [`arcsine_cdf_with_support`] for `q ∈ [0, 1]`.
pub fn arcsine_quantile<T: Scalar>(q: T, c: T) -> T {
    c * (T::PI() * (q - T::lit(0.5))).sin()
}

/// Sorted samples; the ECDF at `x` is `#{v <= x} / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EcdfTable<T> {
    values: Vec<T>,
}

impl<T: Scalar> EcdfTable<T> {
    /// NaN samples are dropped.
    pub fn from_samples(mut values: Vec<T>) -> Self {
        values.retain(|v| !v.is_nan());
        values.sort_by(|a, b| a.partial_cmp(b).expect("NaN removed"));
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn eval(&self, x: T) -> T {
        if self.values.is_empty() {
            return T::zero();
        }
        let below = self.values.partition_point(|&v| v <= x);
        T::from_count(below) / T::from_count(self.values.len())
    }

    /// `(value, ECDF(value))` at each distinct sample value.
    pub fn steps(&self) -> Vec<(T, T)> {
        let n = T::from_count(self.values.len());
        let mut out: Vec<(T, T)> = Vec::new();
        for (i, &v) in self.values.iter().enumerate() {
            let mass = T::from_count(i + 1) / n;
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 = mass,
                _ => out.push((v, mass)),
            }
        }
        out
    }
}

/// ECDF of `δ_n = n^{1/4}(E_n - (n - g²))` over labels `min_label..=max_label`.
pub fn empirical_deviation_distribution<T: Scalar>(
    table: &SpectrumTable<T>,
    parity: ParityClass,
    min_label: usize,
) -> EcdfTable<T> {
    let params = table.params();
    EcdfTable::from_samples(
        table
            .records(parity)
            .iter()
            .filter(|r| r.label >= min_label)
            .map(|r| deviation(r, params).deviation)
            .collect(),
    )
}

/// Kolmogorov–Smirnov distance `sup |ECDF - F|`, checked just below and at
/// every jump of the ECDF.
pub fn ks_distance<T: Scalar>(ecdf: &EcdfTable<T>, cdf: impl Fn(T) -> T) -> Result<T> {
    if ecdf.is_empty() {
        return Err(Error::Empty("ECDF"));
    }
    let mut below = T::zero();
    let mut worst = T::zero();
    for (v, at) in ecdf.steps() {
        let f = cdf(v);
        worst = worst.max((f - below).abs()).max((at - f).abs());
        below = at;
    }
    Ok(worst)
}
