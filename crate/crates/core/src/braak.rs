//! Occupancy of unit intervals by shifted eigenvalues `x_n^± = E_n^± + g²`.
//!
//! For "good" `n ∈ [N/2, N]`, where `|cos θ_n| > N^{-1/4+δ}`, the interval
//! `(n, n+1)` holds exactly two shifted eigenvalues of one parity class and
//! none of the other, and both neighbouring intervals hold a pair of the
//! other class. This module classifies intervals of a computed
//! [`SpectrumTable`], checks that alternating pattern, counts the bad set and
//! enumerates the fractional-part counts behind its size estimate.

use std::fmt;

use crate::asymptotics::{fractional_part, theta};
use crate::eigensolver::{EigenvalueRecord, SpectrumTable};
use crate::model::{ModelParams, ParityClass};
use crate::{Error, Result, Scalar};

/// Default distance from an integer below which a shifted eigenvalue is a
/// boundary hit.
pub const DEFAULT_BOUNDARY_EPS: f64 = 1e-6;

/// Default exponent δ in the good/bad threshold `N^{-1/4+δ}`.
pub const DEFAULT_DELTA_EXP: f64 = 0.05;

/// Labels either side of `n` scanned for members of `(n, n+1)`.
pub const WINDOW: usize = 3;

pub fn shifted<T: Scalar>(record: &EigenvalueRecord<T>, params: &ModelParams<T>) -> T {
    record.value + params.g_squared()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalVerdict {
    /// Exactly two Minus and no Plus shifted eigenvalues.
    MinusPair,
    /// Exactly two Plus and no Minus shifted eigenvalues.
    PlusPair,
    Violation,
    /// A shifted eigenvalue lies within `eps` of an endpoint.
    Boundary,
}

impl IntervalVerdict {
    pub fn pair_parity(self) -> Option<ParityClass> {
        match self {
            IntervalVerdict::MinusPair => Some(ParityClass::Minus),
            IntervalVerdict::PlusPair => Some(ParityClass::Plus),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IntervalVerdict::MinusPair => "minus_pair",
            IntervalVerdict::PlusPair => "plus_pair",
            IntervalVerdict::Violation => "violation",
            IntervalVerdict::Boundary => "boundary",
        }
    }
}

impl fmt::Display for IntervalVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryHit<T> {
    pub label: usize,
    pub parity: ParityClass,
    /// Signed distance from the nearest endpoint.
    pub distance: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntervalClassification<T> {
    pub n: usize,
    pub count_plus: usize,
    pub count_minus: usize,
    /// Labels `k` with `x_k^+` inside the interval.
    pub members_plus: Vec<usize>,
    pub members_minus: Vec<usize>,
    pub boundary_hits: Vec<BoundaryHit<T>>,
    pub good: bool,
    pub verdict: IntervalVerdict,
}

/// Range cap `N` and exponent `δ` defining good `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Goodness {
    n_cap: usize,
    delta_exp: f64,
}

impl Goodness {
    pub fn new(n_cap: usize, delta_exp: f64) -> Result<Self> {
        if n_cap < 2 {
            return Err(Error::InvalidRangeCap(n_cap));
        }
        if !(delta_exp > 0.0 && delta_exp < 0.25) {
            return Err(Error::InvalidExponent(delta_exp));
        }
        Ok(Self { n_cap, delta_exp })
    }

    pub fn n_cap(&self) -> usize {
        self.n_cap
    }

    pub fn delta_exp(&self) -> f64 {
        self.delta_exp
    }

    /// `N^{-1/4+δ}`.
    pub fn threshold(&self) -> f64 {
        (self.n_cap as f64).powf(-0.25 + self.delta_exp)
    }

    /// Labels `⌈N/2⌉..=N`.
    pub fn range(&self) -> std::ops::RangeInclusive<usize> {
        self.n_cap.div_ceil(2)..=self.n_cap
    }

    pub fn is_good<T: Scalar>(&self, n: usize, g: T) -> bool {
        let c = theta(n, g).cos().abs().to_f64().unwrap_or(0.0);
        c > self.threshold()
    }
}

/// `|cos θ_n| > N^{-1/4+δ}`.
pub fn is_good<T: Scalar>(n: usize, n_cap: usize, delta_exp: f64, g: T) -> Result<bool> {
    Ok(Goodness::new(n_cap, delta_exp)?.is_good(n, g))
}

/// Parity whose pair the expansion places in `(n, n+1)`: Plus when
/// `(-1)^n cos θ_n > 0`, Minus otherwise.
pub fn predicted_center_parity<T: Scalar>(n: usize, g: T) -> ParityClass {
    let alternating = if n.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    };
    if alternating * theta(n, g).cos() > T::zero() {
        ParityClass::Plus
    } else {
        ParityClass::Minus
    }
}

pub fn classify_interval<T: Scalar>(
    n: usize,
    table: &SpectrumTable<T>,
    eps: T,
    goodness: &Goodness,
) -> Result<IntervalClassification<T>> {
    let lo = n as i64 - WINDOW as i64;
    let hi = (n + WINDOW) as i64;
    if lo < 1 || hi > table.max_label() as i64 {
        return Err(Error::IntervalNotCovered {
            n,
            lo,
            hi,
            max_label: table.max_label(),
        });
    }
    let params = table.params();
    let left = T::from_count(n);
    let right = left + T::one();
    let mut members_plus = Vec::new();
    let mut members_minus = Vec::new();
    let mut boundary_hits = Vec::new();
    for parity in ParityClass::BOTH {
        for label in n - WINDOW..=n + WINDOW {
            let record = table.get(parity, label).expect("label range checked above");
            let x = shifted(record, params);
            let (dl, dr) = (x - left, x - right);
            let distance = if dl.abs() <= dr.abs() { dl } else { dr };
            if distance.abs() <= eps {
                boundary_hits.push(BoundaryHit {
                    label,
                    parity,
                    distance,
                });
            } else if x > left && x < right {
                match parity {
                    ParityClass::Plus => members_plus.push(label),
                    ParityClass::Minus => members_minus.push(label),
                }
            }
        }
    }
    let verdict = if !boundary_hits.is_empty() {
        IntervalVerdict::Boundary
    } else {
        match (members_minus.len(), members_plus.len()) {
            (2, 0) => IntervalVerdict::MinusPair,
            (0, 2) => IntervalVerdict::PlusPair,
            _ => IntervalVerdict::Violation,
        }
    };
    Ok(IntervalClassification {
        n,
        count_plus: members_plus.len(),
        count_minus: members_minus.len(),
        members_plus,
        members_minus,
        boundary_hits,
        good: goodness.is_good(n, params.g()),
        verdict,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternCheck {
    Pass,
    Fail,
    /// The centre is bad or the window touches a boundary hit.
    Unclassified,
}

impl PatternCheck {
    pub fn as_str(self) -> &'static str {
        match self {
            PatternCheck::Pass => "pass",
            PatternCheck::Fail => "fail",
            PatternCheck::Unclassified => "unclassified",
        }
    }
}

impl fmt::Display for PatternCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Checks the alternating pair pattern on the intervals starting at
/// `n - 1`, `n`, `n + 1`. Only the centre needs to be good.
pub fn check_theorem_pattern<T>(
    n: usize,
    window: &[IntervalClassification<T>],
) -> Result<PatternCheck> {
    let expected = [n.wrapping_sub(1), n, n + 1];
    if n == 0 || window.len() != 3 || window.iter().zip(expected).any(|(c, e)| c.n != e) {
        return Err(Error::MalformedWindow(n));
    }
    let [before, centre, after] = [&window[0], &window[1], &window[2]];
    if !centre.good
        || window
            .iter()
            .any(|c| c.verdict == IntervalVerdict::Boundary)
    {
        return Ok(PatternCheck::Unclassified);
    }
    let pass = match centre.verdict.pair_parity() {
        Some(parity) => [before, after]
            .iter()
            .all(|c| c.verdict.pair_parity() == Some(parity.opposite())),
        None => false,
    };
    Ok(if pass {
        PatternCheck::Pass
    } else {
        PatternCheck::Fail
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BadSetReport {
    pub n_cap: usize,
    pub delta_exp: f64,
    /// Number of `n` in `[N/2, N]`.
    pub range_len: usize,
    pub count: usize,
    /// `N^{3/4+δ} / π`: window length `(2/π) N^{-1/4+δ}` times `N/2`.
    pub predicted: f64,
}

impl BadSetReport {
    pub fn ratio(&self) -> f64 {
        self.count as f64 / self.predicted
    }

    pub fn bad_fraction(&self) -> f64 {
        self.count as f64 / self.range_len as f64
    }
}

/// Number of bad `n ∈ [N/2, N]`.
pub fn count_bad<T: Scalar>(n_cap: usize, delta_exp: f64, g: T) -> Result<BadSetReport> {
    let goodness = Goodness::new(n_cap, delta_exp)?;
    let range = goodness.range();
    let range_len = range.clone().count();
    let count = range.filter(|&n| !goodness.is_good(n, g)).count();
    Ok(BadSetReport {
        n_cap,
        delta_exp,
        range_len,
        count,
        predicted: (n_cap as f64).powf(0.75 + delta_exp) / std::f64::consts::PI,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FejerReport {
    pub a: f64,
    pub gamma: f64,
    pub alpha: f64,
    pub beta: f64,
    pub n_cap: usize,
    /// `#{n ∈ [N/2, N] : ((a√n + γ)) ∈ [α, β]}`.
    pub count: usize,
    /// `(β - α) N / 2`.
    pub expected: f64,
    pub discrepancy: f64,
}

impl FejerReport {
    /// `discrepancy / √N`.
    pub fn scaled(&self) -> f64 {
        self.discrepancy / (self.n_cap as f64).sqrt()
    }
}

fn check_fejer_args(a: f64, alpha: f64, beta: f64, n_cap: usize) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) || !(0.0..=1.0).contains(&beta) || alpha > beta {
        return Err(Error::MalformedInterval { alpha, beta });
    }
    if n_cap < 2 {
        return Err(Error::InvalidRangeCap(n_cap));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParams(format!("slope a = {a} must be > 0")));
    }
    Ok(())
}

/// Fractional parts `((a√n + γ))` for `n ∈ [⌈N/2⌉, N]`.
pub fn fractional_parts(a: f64, gamma: f64, n_cap: usize) -> Vec<f64> {
    (n_cap.div_ceil(2)..=n_cap)
        .map(|n| fractional_part(a * (n as f64).sqrt() + gamma))
        .collect()
}

/// Exact enumeration of the fractional parts `((a√n + γ))` landing in `[α, β]`.
pub fn fejer_count(a: f64, gamma: f64, alpha: f64, beta: f64, n_cap: usize) -> Result<FejerReport> {
    check_fejer_args(a, alpha, beta, n_cap)?;
    let count = fractional_parts(a, gamma, n_cap)
        .into_iter()
        .filter(|x| (alpha..=beta).contains(x))
        .count();
    let expected = (beta - alpha) * n_cap as f64 / 2.0;
    Ok(FejerReport {
        a,
        gamma,
        alpha,
        beta,
        n_cap,
        count,
        expected,
        discrepancy: (count as f64 - expected).abs(),
    })
}

/// The report with the largest discrepancy among all intervals
/// `[i/d, j/d]`, `0 <= i < j <= d`.
pub fn fejer_grid_worst(a: f64, gamma: f64, n_cap: usize, divisions: usize) -> Result<FejerReport> {
    check_fejer_args(a, 0.0, 1.0, n_cap)?;
    if divisions == 0 {
        return Err(Error::Empty("interval grid"));
    }
    let mut parts = fractional_parts(a, gamma, n_cap);
    parts.sort_by(f64::total_cmp);
    let d = divisions as f64;
    let mut worst: Option<FejerReport> = None;
    for i in 0..divisions {
        for j in i + 1..=divisions {
            let (alpha, beta) = (i as f64 / d, j as f64 / d);
            let count =
                parts.partition_point(|&x| x <= beta) - parts.partition_point(|&x| x < alpha);
            let expected = (beta - alpha) * n_cap as f64 / 2.0;
            let report = FejerReport {
                a,
                gamma,
                alpha,
                beta,
                n_cap,
                count,
                expected,
                discrepancy: (count as f64 - expected).abs(),
            };
            if worst.is_none_or(|w| report.discrepancy > w.discrepancy) {
                worst = Some(report);
            }
        }
    }
    Ok(worst.expect("at least one interval"))
}
