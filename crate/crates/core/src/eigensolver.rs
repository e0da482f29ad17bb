//! Low-lying eigenvalues of symmetric tridiagonal matrices by Sturm-sequence
//! bisection, plus the adaptive truncation and label calibration that turn
//! truncated Jacobi matrices into labeled parity-class spectra.

use rayon::prelude::*;

use crate::model::{build_truncated, ModelParams, ParityClass, TridiagonalMatrix};
use crate::{Error, Result, Scalar};

/// Number of eigenvalues the label calibration wants to see.
pub const MIN_CALIBRATION_VALUES: usize = 32;

/// Eigenvalues bisected together in one sweep.
const LANES: usize = 16;

/// Offsets whose median deviations are closer than this are ambiguous.
pub const OFFSET_AMBIGUITY: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions<T> {
    /// Bisection stops once the bracket is narrower than this.
    pub eigen_tol: T,
    /// Truncation doubling stops once no eigenvalue moves by this much.
    pub trunc_tol: T,
    /// Eigenvalues computed beyond the requested labels.
    pub buffer: usize,
    /// Largest truncation tried before giving up.
    pub max_dim: usize,
}

impl<T: Scalar> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            eigen_tol: T::lit(1e-10),
            trunc_tol: T::lit(1e-8),
            buffer: 16,
            max_dim: 1 << 20,
        }
    }
}

impl<T: Scalar> SolverOptions<T> {
    fn validate(&self) -> Result<()> {
        for tol in [self.eigen_tol, self.trunc_tol] {
            if !(tol > T::zero()) || !tol.is_finite() {
                return Err(Error::InvalidTolerance(tol.to_f64().unwrap_or(f64::NAN)));
            }
        }
        Ok(())
    }

    /// Starting truncation for `count` eigenvalues: `2·count + ⌈8g²⌉`.
    pub fn initial_dim(&self, count: usize, params: &ModelParams<T>) -> usize {
        let coupling = (T::lit(8.0) * params.g_squared())
            .ceil()
            .to_usize()
            .unwrap_or(0);
        2 * count + coupling
    }
}

/// One labeled eigenvalue `E_n^±`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueRecord<T> {
    pub label: usize,
    pub parity: ParityClass,
    pub value: T,
    pub truncation_dim: usize,
    /// Movement of the eigenvalue under the last truncation doubling.
    pub error_estimate: T,
}

/// Shifted-pivot data shared by every Sturm count on one matrix.
struct SturmContext<'a, T> {
    diag: &'a [T],
    offdiag_sq: Vec<T>,
    guard: T,
}

impl<'a, T: Scalar> SturmContext<'a, T> {
    fn new(t: &'a TridiagonalMatrix<T>) -> Self {
        let scale = t.scale();
        let scale = if scale > T::zero() { scale } else { T::one() };
        Self {
            diag: t.diag(),
            offdiag_sq: t.offdiag().iter().map(|&a| a * a).collect(),
            guard: T::epsilon() * scale,
        }
    }

    /// Number of negative pivots of `T - λI = LDLᵀ`.
    fn count(&self, lambda: T) -> usize {
        let mut q = self.diag[0] - lambda;
        let mut count = usize::from(q < T::zero());
        for (&d, &a2) in self.diag[1..].iter().zip(&self.offdiag_sq) {
            // A vanishing pivot is nudged to ±guard, keeping its sign (+0 → +guard).
            if q.abs() < self.guard {
                q = self.guard.copysign(q);
            }
            q = (d - lambda) - a2 / q;
            count += usize::from(q < T::zero());
        }
        count
    }

    /// [`Self::count`] at `LANES` shifts in one sweep over the matrix. The
    /// recurrences are independent, so interleaving them hides the latency
    /// of the division.
    fn count_lanes<const LANES: usize>(&self, lambdas: &[T; LANES]) -> [usize; LANES] {
        let mut q = [T::zero(); LANES];
        let mut counts = [0usize; LANES];
        for l in 0..LANES {
            q[l] = self.diag[0] - lambdas[l];
            counts[l] = usize::from(q[l] < T::zero());
        }
        for (&d, &a2) in self.diag[1..].iter().zip(&self.offdiag_sq) {
            for l in 0..LANES {
                let mut p = q[l];
                if p.abs() < self.guard {
                    p = self.guard.copysign(p);
                }
                q[l] = (d - lambdas[l]) - a2 / p;
                counts[l] += usize::from(q[l] < T::zero());
            }
        }
        counts
    }

    /// [`Self::refine`] for up to `LANES` brackets at once.
    fn refine_lanes<const LANES: usize>(&self, brackets: &[(usize, T, T)], tol: T) -> Vec<T> {
        debug_assert!(brackets.len() <= LANES);
        let two = T::lit(2.0);
        let mut k = [0usize; LANES];
        let mut lo = [T::zero(); LANES];
        let mut hi = [T::zero(); LANES];
        let mut active = [false; LANES];
        for (l, &(kk, a, b)) in brackets.iter().enumerate() {
            (k[l], lo[l], hi[l], active[l]) = (kk, a, b, true);
        }
        loop {
            let mut mid = [T::zero(); LANES];
            for l in 0..LANES {
                if active[l] {
                    let m = (lo[l] + hi[l]) / two;
                    if hi[l] - lo[l] < tol || m <= lo[l] || m >= hi[l] {
                        active[l] = false;
                    }
                    mid[l] = m;
                }
            }
            if !active.iter().any(|&a| a) {
                break;
            }
            let counts = self.count_lanes(&mid);
            for l in 0..LANES {
                if active[l] {
                    if counts[l] >= k[l] {
                        hi[l] = mid[l];
                    } else {
                        lo[l] = mid[l];
                    }
                }
            }
        }
        (0..brackets.len()).map(|l| (lo[l] + hi[l]) / two).collect()
    }

    /// Bracket guaranteed to hold every eigenvalue: `count(lo) = 0`, `count(hi) = dim`.
    fn outer_bracket(&self, t: &TridiagonalMatrix<T>) -> (T, T) {
        let (lo, hi) = t.gershgorin_bounds();
        let pad = self.guard + T::lit(4.0) * T::epsilon() * lo.abs().max(hi.abs());
        (lo - pad - self.guard, hi + pad + self.guard)
    }

    /// Narrows `[lo, hi)` around eigenvalue `k` (1-based) until narrower than `tol`.
    fn refine(&self, k: usize, mut lo: T, mut hi: T, tol: T) -> T {
        let two = T::lit(2.0);
        while hi - lo >= tol {
            let mid = (lo + hi) / two;
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count(mid) >= k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo + hi) / two
    }

    /// Splits `[lo, hi)` until each wanted eigenvalue index sits in its own
    /// bracket. `below_lo`/`below_hi` are the Sturm counts at the endpoints.
    #[allow(clippy::too_many_arguments)]
    fn isolate(
        &self,
        lo: T,
        hi: T,
        below_lo: usize,
        below_hi: usize,
        wanted: usize,
        tol: T,
        out: &mut Vec<(usize, T, T)>,
    ) {
        if below_lo >= wanted || below_lo == below_hi {
            return;
        }
        let mid = (lo + hi) / T::lit(2.0);
        if below_hi - below_lo == 1 || hi - lo < tol || mid <= lo || mid >= hi {
            for k in below_lo + 1..=below_hi.min(wanted) {
                out.push((k, lo, hi));
            }
            return;
        }
        let below_mid = self.count(mid);
        self.isolate(lo, mid, below_lo, below_mid, wanted, tol, out);
        self.isolate(mid, hi, below_mid, below_hi, wanted, tol, out);
    }
}

/// Number of eigenvalues of `t` strictly below `lambda`.
pub fn sturm_count<T: Scalar>(t: &TridiagonalMatrix<T>, lambda: T) -> usize {
    SturmContext::new(t).count(lambda)
}

fn check_tol<T: Scalar>(tol: T) -> Result<()> {
    if !(tol > T::zero()) || !tol.is_finite() {
        return Err(Error::InvalidTolerance(tol.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// The `k`-th smallest eigenvalue (1-based) to within `tol`.
pub fn eigenvalue_k<T: Scalar>(t: &TridiagonalMatrix<T>, k: usize, tol: T) -> Result<T> {
    check_tol(tol)?;
    if k == 0 || k > t.dim() {
        return Err(Error::IndexOutOfRange {
            index: k,
            min: 1,
            max: t.dim(),
        });
    }
    let ctx = SturmContext::new(t);
    let (lo, hi) = ctx.outer_bracket(t);
    Ok(ctx.refine(k, lo, hi, tol))
}

/// The `count` smallest eigenvalues in increasing order.
pub fn lowest_eigenvalues<T: Scalar>(
    t: &TridiagonalMatrix<T>,
    count: usize,
    tol: T,
) -> Result<Vec<T>> {
    check_tol(tol)?;
    if count > t.dim() {
        return Err(Error::IndexOutOfRange {
            index: count,
            min: 0,
            max: t.dim(),
        });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let ctx = SturmContext::new(t);
    let (lo, hi) = ctx.outer_bracket(t);
    let mut brackets = Vec::with_capacity(count);
    ctx.isolate(lo, hi, 0, t.dim(), count, tol, &mut brackets);
    debug_assert_eq!(brackets.len(), count);
    Ok(brackets
        .par_chunks(LANES)
        .flat_map_iter(|chunk| ctx.refine_lanes::<LANES>(chunk, tol))
        .collect())
}

/// Labeled eigenvalues `E_1^±, …, E_max_label^±` of one parity class.
///
/// Starts from [`SolverOptions::initial_dim`] and doubles the truncation
/// until every computed eigenvalue moves by less than `trunc_tol`; labels
/// then come from [`label_offset`].
pub fn adaptive_spectrum<T: Scalar>(
    parity: ParityClass,
    params: &ModelParams<T>,
    max_label: usize,
    opts: &SolverOptions<T>,
) -> Result<Vec<EigenvalueRecord<T>>> {
    opts.validate()?;
    if max_label == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let wanted = (max_label + opts.buffer).max(MIN_CALIBRATION_VALUES);
    let mut dim = opts.initial_dim(wanted, params);
    if dim > opts.max_dim {
        return Err(Error::NoConvergence {
            parity,
            tol: opts.trunc_tol.to_f64().unwrap_or(f64::NAN),
            max_dim: opts.max_dim,
            movement: f64::INFINITY,
        });
    }
    let mut previous = lowest_eigenvalues(
        &build_truncated(parity, params, dim)?,
        wanted,
        opts.eigen_tol,
    )?;
    let (values, movement, dim) = loop {
        let next_dim = dim * 2;
        if next_dim > opts.max_dim {
            let movement = f64::INFINITY;
            return Err(Error::NoConvergence {
                parity,
                tol: opts.trunc_tol.to_f64().unwrap_or(f64::NAN),
                max_dim: opts.max_dim,
                movement,
            });
        }
        let current = lowest_eigenvalues(
            &build_truncated(parity, params, next_dim)?,
            wanted,
            opts.eigen_tol,
        )?;
        let movement: Vec<T> = current
            .iter()
            .zip(&previous)
            .map(|(a, b)| (*a - *b).abs())
            .collect();
        let worst = movement.iter().fold(T::zero(), |acc, &m| acc.max(m));
        if worst < opts.trunc_tol {
            break (current, movement, next_dim);
        }
        log::debug!("{parity}: dim {next_dim} still moving by {worst:e}");
        previous = current;
        dim = next_dim;
    };

    let offset = label_offset(&values, params)?;
    let records: Vec<_> = values
        .iter()
        .zip(&movement)
        .enumerate()
        .filter_map(|(i, (&value, &error_estimate))| {
            let label = i as i64 + 1 + offset;
            (1..=max_label as i64)
                .contains(&label)
                .then_some(EigenvalueRecord {
                    label: label as usize,
                    parity,
                    value,
                    truncation_dim: dim,
                    error_estimate,
                })
        })
        .collect();
    if records.len() != max_label || records[0].label != 1 {
        return Err(Error::LabelCoverage { parity, max_label });
    }
    Ok(records)
}

/// Integer `s` such that sorted position `k` (1-based) carries label `k + s`,
/// chosen so the upper half of `values` best matches `n - g²`.
pub fn label_offset<T: Scalar>(values: &[T], params: &ModelParams<T>) -> Result<i64> {
    if values.len() < MIN_CALIBRATION_VALUES {
        return Err(Error::TooFewForCalibration {
            needed: MIN_CALIBRATION_VALUES,
            got: values.len(),
        });
    }
    let g2 = params.g_squared().to_f64().unwrap_or(f64::NAN);
    let start = values.len() / 2;
    let residuals: Vec<f64> = values[start..]
        .iter()
        .enumerate()
        .map(|(i, v)| v.to_f64().unwrap_or(f64::NAN) + g2 - (start + i + 1) as f64)
        .collect();
    let centre = median(residuals.clone()).round() as i64;
    let mut scored: Vec<(f64, i64)> = (centre - 2..=centre + 2)
        .map(|s| {
            let dev = median(residuals.iter().map(|r| (r - s as f64).abs()).collect());
            (dev, s)
        })
        .collect();
    scored.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (best_dev, best) = scored[0];
    let (runner_up_dev, runner_up) = scored[1];
    if runner_up_dev - best_dev < OFFSET_AMBIGUITY {
        return Err(Error::AmbiguousLabelOffset {
            best,
            runner_up,
            best_dev,
            runner_up_dev,
        });
    }
    Ok(best)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Both parity spectra for labels `1..=max_label`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable<T> {
    params: ModelParams<T>,
    tolerance: T,
    plus: Vec<EigenvalueRecord<T>>,
    minus: Vec<EigenvalueRecord<T>>,
    max_label: usize,
}

impl<T: Scalar> SpectrumTable<T> {
    pub fn compute(
        params: ModelParams<T>,
        max_label: usize,
        opts: &SolverOptions<T>,
    ) -> Result<Self> {
        let plus = adaptive_spectrum(ParityClass::Plus, &params, max_label, opts)?;
        let minus = adaptive_spectrum(ParityClass::Minus, &params, max_label, opts)?;
        Self::from_records(params, opts.trunc_tol, plus, minus)
    }

    /// Assembles a table from precomputed records, checking that each parity
    /// holds exactly labels `1..=N` in order.
    pub fn from_records(
        params: ModelParams<T>,
        tolerance: T,
        plus: Vec<EigenvalueRecord<T>>,
        minus: Vec<EigenvalueRecord<T>>,
    ) -> Result<Self> {
        let max_label = plus.len();
        for (parity, records) in [(ParityClass::Plus, &plus), (ParityClass::Minus, &minus)] {
            let complete = records.len() == max_label
                && records
                    .iter()
                    .enumerate()
                    .all(|(i, r)| r.label == i + 1 && r.parity == parity);
            if max_label == 0 || !complete {
                return Err(Error::LabelCoverage { parity, max_label });
            }
        }
        Ok(Self {
            params,
            tolerance,
            plus,
            minus,
            max_label,
        })
    }

    pub fn params(&self) -> &ModelParams<T> {
        &self.params
    }

    pub fn tolerance(&self) -> T {
        self.tolerance
    }

    pub fn max_label(&self) -> usize {
        self.max_label
    }

    pub fn records(&self, parity: ParityClass) -> &[EigenvalueRecord<T>] {
        match parity {
            ParityClass::Plus => &self.plus,
            ParityClass::Minus => &self.minus,
        }
    }

    pub fn get(&self, parity: ParityClass, label: usize) -> Option<&EigenvalueRecord<T>> {
        label
            .checked_sub(1)
            .and_then(|i| self.records(parity).get(i))
    }

    /// The same table restricted to labels `1..=max_label`.
    pub fn truncated(&self, max_label: usize) -> Result<Self> {
        if max_label == 0 || max_label > self.max_label {
            return Err(Error::IndexOutOfRange {
                index: max_label,
                min: 1,
                max: self.max_label,
            });
        }
        Ok(Self {
            params: self.params,
            tolerance: self.tolerance,
            plus: self.plus[..max_label].to_vec(),
            minus: self.minus[..max_label].to_vec(),
            max_label,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn two_by_two() -> TridiagonalMatrix<f64> {
        TridiagonalMatrix::new(vec![0.0, 1.0], vec![0.5]).unwrap()
    }

    // Roots of λ² - λ - 1/4.
    const LOW: f64 = (1.0 - std::f64::consts::SQRT_2) / 2.0;
    const HIGH: f64 = (1.0 + std::f64::consts::SQRT_2) / 2.0;

    #[test]
    fn sturm_count_examples() {
        let single = TridiagonalMatrix::new(vec![0.5], vec![]).unwrap();
        assert_eq!(sturm_count(&single, 1.0), 1);
        assert_eq!(sturm_count(&two_by_two(), 0.0), 1);
        assert_eq!(sturm_count(&two_by_two(), 2.0), 2);
        assert_eq!(sturm_count(&two_by_two(), -1.0), 0);
    }

    #[test]
    fn sturm_count_extremes() {
        let t =
            build_truncated(ParityClass::Plus, &ModelParams::new(0.7, 0.4).unwrap(), 50).unwrap();
        assert_eq!(sturm_count(&t, f64::MAX), 50);
        assert_eq!(sturm_count(&t, -f64::MAX), 0);
        assert_eq!(sturm_count(&t, f64::INFINITY), 50);
        assert_eq!(sturm_count(&t, f64::NEG_INFINITY), 0);
    }

    #[test]
    fn zero_pivot_is_guarded() {
        // q₁ = 0 exactly at λ = 0; eigenvalues are ±1.
        let t = TridiagonalMatrix::new(vec![0.0, 0.0], vec![1.0]).unwrap();
        assert_eq!(sturm_count(&t, 0.0), 1);
        assert_abs_diff_eq!(eigenvalue_k(&t, 1, 1e-12).unwrap(), -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eigenvalue_k(&t, 2, 1e-12).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenvalue_k_examples() {
        let single = TridiagonalMatrix::new(vec![3.0], vec![]).unwrap();
        assert_abs_diff_eq!(
            eigenvalue_k(&single, 1, 1e-10).unwrap(),
            3.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            eigenvalue_k(&two_by_two(), 1, 1e-10).unwrap(),
            LOW,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            eigenvalue_k(&two_by_two(), 2, 1e-10).unwrap(),
            HIGH,
            epsilon = 1e-10
        );
        assert!(eigenvalue_k(&two_by_two(), 0, 1e-10).is_err());
        assert!(eigenvalue_k(&two_by_two(), 3, 1e-10).is_err());
        assert!(eigenvalue_k(&two_by_two(), 1, 0.0).is_err());
    }

    #[test]
    fn lowest_eigenvalues_examples() {
        let vals = lowest_eigenvalues(&two_by_two(), 2, 1e-10).unwrap();
        assert_abs_diff_eq!(vals[0], LOW, epsilon = 1e-10);
        assert_abs_diff_eq!(vals[1], HIGH, epsilon = 1e-10);
        assert!(lowest_eigenvalues(&two_by_two(), 0, 1e-10)
            .unwrap()
            .is_empty());
        assert!(lowest_eigenvalues(&two_by_two(), 3, 1e-10).is_err());
    }

    #[test]
    fn degenerate_diagonal_matrix() {
        let t = TridiagonalMatrix::new(vec![2.0, 1.0, 2.0, 1.0], vec![0.0, 0.0, 0.0]).unwrap();
        let vals = lowest_eigenvalues(&t, 4, 1e-12).unwrap();
        for (v, want) in vals.iter().zip([1.0, 1.0, 2.0, 2.0]) {
            assert_abs_diff_eq!(*v, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn f32_matches_f64_on_small_model() {
        let p32 = ModelParams::new(0.7f32, 0.4).unwrap();
        let p64 = ModelParams::new(0.7f64, 0.4).unwrap();
        let v32 = lowest_eigenvalues(
            &build_truncated(ParityClass::Minus, &p32, 40).unwrap(),
            10,
            1e-5,
        )
        .unwrap();
        let v64 = lowest_eigenvalues(
            &build_truncated(ParityClass::Minus, &p64, 40).unwrap(),
            10,
            1e-12,
        )
        .unwrap();
        for (a, b) in v32.iter().zip(&v64) {
            assert!((*a as f64 - b).abs() < 1e-4, "{a} vs {b}");
        }
    }

    #[test]
    fn label_offset_examples() {
        let p = ModelParams::new(0.7, 0.4).unwrap();
        let aligned: Vec<f64> = (1..=64).map(|k| k as f64 - 0.49).collect();
        assert_eq!(label_offset(&aligned, &p).unwrap(), 0);
        let shifted: Vec<f64> = (0..64).map(|k| k as f64 - 0.49).collect();
        assert_eq!(label_offset(&shifted, &p).unwrap(), -1);
        assert!(matches!(
            label_offset(&aligned[..31], &p),
            Err(Error::TooFewForCalibration { .. })
        ));
        // Half-integer residuals sit midway between two offsets.
        let midway: Vec<f64> = (1..=64).map(|k| k as f64 - 0.49 + 0.5).collect();
        assert!(matches!(
            label_offset(&midway, &p),
            Err(Error::AmbiguousLabelOffset { .. })
        ));
    }

    #[test]
    fn displaced_oscillator_is_exact() {
        let p = ModelParams::new(0.7, 0.0).unwrap();
        let records =
            adaptive_spectrum(ParityClass::Minus, &p, 50, &SolverOptions::default()).unwrap();
        assert_eq!(records.len(), 50);
        for r in &records {
            assert_abs_diff_eq!(r.value, r.label as f64 - 0.49, epsilon = 1e-6);
            assert!(r.error_estimate < 1e-8);
        }
    }

    #[test]
    fn weak_coupling_recovers_diagonal() {
        let p = ModelParams::new(1e-8, 0.4).unwrap();
        let records =
            adaptive_spectrum(ParityClass::Plus, &p, 4, &SolverOptions::default()).unwrap();
        // Sorted diagonal is 0.4, 0.6, 2.4, 2.6, 4.4, ...; 0.4 is the ground state.
        let values: Vec<f64> = records.iter().map(|r| r.value).collect();
        for (v, want) in values.iter().zip([0.6, 2.4, 2.6, 4.4]) {
            assert_abs_diff_eq!(*v, want, epsilon = 1e-8);
        }
    }

    #[test]
    fn no_convergence_is_reported() {
        let p = ModelParams::new(0.7, 0.4).unwrap();
        let opts = SolverOptions {
            max_dim: 100,
            ..SolverOptions::default()
        };
        assert!(matches!(
            adaptive_spectrum(ParityClass::Plus, &p, 40, &opts),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn table_rejects_gaps() {
        let p = ModelParams::new(0.7, 0.4).unwrap();
        let rec = |label, parity| EigenvalueRecord {
            label,
            parity,
            value: label as f64,
            truncation_dim: 10,
            error_estimate: 0.0,
        };
        let plus = vec![rec(1, ParityClass::Plus), rec(2, ParityClass::Plus)];
        let minus = vec![rec(1, ParityClass::Minus), rec(3, ParityClass::Minus)];
        assert!(SpectrumTable::from_records(p, 1e-8, plus.clone(), minus).is_err());
        let minus = vec![rec(1, ParityClass::Minus), rec(2, ParityClass::Minus)];
        let table = SpectrumTable::from_records(p, 1e-8, plus, minus).unwrap();
        assert_eq!(table.get(ParityClass::Minus, 2).unwrap().value, 2.0);
        assert!(table.get(ParityClass::Minus, 0).is_none());
        assert_eq!(table.truncated(1).unwrap().max_label(), 1);
        assert!(table.truncated(3).is_err());
    }

    proptest! {
        #[test]
        fn sturm_count_is_monotone(
            diag in prop::collection::vec(-5.0f64..5.0, 1..20),
            seed in prop::collection::vec(-2.0f64..2.0, 20),
            a in -8.0f64..8.0,
            b in -8.0f64..8.0,
        ) {
            let off = seed[..diag.len() - 1].to_vec();
            let t = TridiagonalMatrix::new(diag, off).unwrap();
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(sturm_count(&t, lo) <= sturm_count(&t, hi));
        }

        #[test]
        fn eigenvalues_decrease_with_truncation(m in 8usize..120, g in 0.1f64..2.0, d in 0.0f64..1.5) {
            let p = ModelParams::new(g, d).unwrap();
            let k = 5;
            let small = lowest_eigenvalues(&build_truncated(ParityClass::Plus, &p, m).unwrap(), k, 1e-12).unwrap();
            let big = lowest_eigenvalues(&build_truncated(ParityClass::Plus, &p, m + 1).unwrap(), k, 1e-12).unwrap();
            for (s, b) in small.iter().zip(&big) {
                prop_assert!(*b <= *s + 1e-11);
            }
        }
    }
}
