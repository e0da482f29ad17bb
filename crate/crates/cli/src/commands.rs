//! The five report pipelines.

use rabi_core::asymptotics::least_squares_slope;
use rabi_core::braak::{
    check_theorem_pattern, classify_interval, count_bad, fejer_count, fejer_grid_worst, shifted,
    Goodness, IntervalVerdict, PatternCheck, WINDOW,
};
use rabi_core::statistics::{
    arcsine_cdf, classify_spacings, empirical_deviation_distribution, ks_distance, merge_spectra,
    spacing_frequencies, FrequencyReport, DEFAULT_MIN_LABEL,
};
use rabi_core::{Error as CoreError, ParityClass, Spectrum};

use crate::config::{Command, RunConfig};
use crate::error::Result;
use crate::provider::SpectrumProvider;
use crate::report::{Report, Section, Value};

/// Range caps `N = 2^10, …, 2^16` of the bad-set ladder.
pub const BADSET_LADDER: [usize; 7] = [
    1 << 10,
    1 << 11,
    1 << 12,
    1 << 13,
    1 << 14,
    1 << 15,
    1 << 16,
];

/// Intervals `[i/d, j/d]` searched for the worst equidistribution discrepancy.
pub const FEJER_DIVISIONS: usize = 16;

/// Points of the analytic arcsine CDF grid.
pub const CDF_GRID_POINTS: usize = 512;

/// Running spacing frequencies are reported at about this many values of N.
const RUNNING_CHECKPOINTS: usize = 20;

pub fn execute(
    command: Command,
    config: &RunConfig,
    provider: &SpectrumProvider,
) -> Result<Report> {
    let sections = match command {
        Command::Spectrum => spectrum(config, provider)?,
        Command::Classify => classify(config, provider)?,
        Command::Spacings => spacings(config, provider)?,
        Command::Arcsine => arcsine(config, provider)?,
        Command::Badset => badset(config)?,
    };
    Ok(Report {
        command: command.name(),
        sections,
    })
}

fn spectrum(config: &RunConfig, provider: &SpectrumProvider) -> Result<Vec<Section>> {
    let table = provider.table(config, config.max_label)?;
    let params = table.params();
    let mut rows = Section::new(
        "spectrum",
        &[
            "n",
            "parity",
            "eigenvalue",
            "shifted",
            "truncation_dim",
            "error_estimate",
        ],
    );
    for n in 1..=table.max_label() {
        for parity in ParityClass::BOTH {
            let r = table.get(parity, n).expect("labels 1..=N present");
            rows.push(vec![
                n.into(),
                parity.to_string().into(),
                r.value.into(),
                shifted(r, params).into(),
                r.truncation_dim.into(),
                r.error_estimate.into(),
            ]);
        }
    }
    Ok(vec![rows])
}

fn classify(config: &RunConfig, provider: &SpectrumProvider) -> Result<Vec<Section>> {
    let goodness = Goodness::new(config.max_label, config.delta_exp)?;
    // The window around n + 1 reads labels up to n + 1 + WINDOW.
    let table = provider.table(config, config.max_label + WINDOW + 1)?;
    let first = (*goodness.range().start()).max(WINDOW + 2);
    let last = config.max_label;

    let intervals = (first.saturating_sub(1)..=last + 1)
        .map(|m| classify_interval(m, &table, config.boundary_eps, &goodness))
        .collect::<rabi_core::Result<Vec<_>>>()?;

    let mut rows = Section::new(
        "intervals",
        &[
            "n",
            "good",
            "count_plus",
            "count_minus",
            "verdict",
            "pattern",
        ],
    );
    let mut tally = [0usize; 3];
    let (mut good, mut boundary, mut violation) = (0, 0, 0);
    for window in intervals.windows(3) {
        let centre = &window[1];
        let pattern = check_theorem_pattern(centre.n, window)?;
        tally[match pattern {
            PatternCheck::Pass => 0,
            PatternCheck::Fail => 1,
            PatternCheck::Unclassified => 2,
        }] += 1;
        good += usize::from(centre.good);
        boundary += usize::from(centre.verdict == IntervalVerdict::Boundary);
        violation += usize::from(centre.verdict == IntervalVerdict::Violation);
        rows.push(vec![
            centre.n.into(),
            centre.good.into(),
            centre.count_plus.into(),
            centre.count_minus.into(),
            centre.verdict.as_str().into(),
            pattern.as_str().into(),
        ]);
    }

    let total = rows.rows.len();
    let bad = total - good;
    let mut summary = Section::new(
        "summary",
        &[
            "n_cap",
            "delta_exp",
            "intervals",
            "good",
            "bad",
            "pass",
            "fail",
            "boundary",
            "violation",
            "unclassified",
            "bad_fraction",
            "threshold",
        ],
    );
    summary.push(vec![
        config.max_label.into(),
        config.delta_exp.into(),
        total.into(),
        good.into(),
        bad.into(),
        tally[0].into(),
        tally[1].into(),
        boundary.into(),
        violation.into(),
        tally[2].into(),
        if total > 0 {
            bad as f64 / total as f64
        } else {
            f64::NAN
        }
        .into(),
        goodness.threshold().into(),
    ]);
    Ok(vec![rows, summary])
}

const FREQUENCY_COLUMNS: [&str; 7] = [
    "positive",
    "negative",
    "mixed",
    "excluded",
    "f_positive",
    "f_negative",
    "f_mixed",
];

fn frequency_cells(f: &FrequencyReport) -> Vec<Value> {
    vec![
        f.positive.into(),
        f.negative.into(),
        f.mixed.into(),
        f.excluded.into(),
        f.f_positive().into(),
        f.f_negative().into(),
        f.f_mixed().into(),
    ]
}

fn frequencies_up_to(
    table: &Spectrum,
    max_label: usize,
    tie_tol: f64,
) -> rabi_core::Result<FrequencyReport> {
    let merged = merge_spectra(&table.truncated(max_label)?, tie_tol);
    spacing_frequencies(&classify_spacings(&merged.entries, tie_tol))
}

fn spacings(config: &RunConfig, provider: &SpectrumProvider) -> Result<Vec<Section>> {
    let table = provider.table(config, config.max_label)?;
    let merged = merge_spectra(&table, config.tie_tol);
    let records = classify_spacings(&merged.entries, config.tie_tol);

    let mut rows = Section::new(
        "spacings",
        &[
            "position",
            "lower_label",
            "lower_parity",
            "upper_label",
            "upper_parity",
            "gap",
            "kind",
            "degenerate",
        ],
    );
    for s in &records {
        let (lower, upper) = (&merged.entries[s.position], &merged.entries[s.position + 1]);
        rows.push(vec![
            s.position.into(),
            lower.label.into(),
            lower.parity.to_string().into(),
            upper.label.into(),
            upper.parity.to_string().into(),
            s.gap.into(),
            s.kind.as_str().into(),
            s.degenerate.into(),
        ]);
    }

    let mut frequencies = Section::new("frequencies", &FREQUENCY_COLUMNS);
    frequencies.push(frequency_cells(&spacing_frequencies(&records)?));

    let mut running_columns = vec!["n"];
    running_columns.extend(FREQUENCY_COLUMNS);
    let mut running = Section::new("running", &running_columns);
    let step = (config.max_label / RUNNING_CHECKPOINTS).max(1);
    let mut checkpoints: Vec<usize> = (step..=config.max_label).step_by(step).collect();
    if checkpoints.last() != Some(&config.max_label) {
        checkpoints.push(config.max_label);
    }
    for n in checkpoints {
        match frequencies_up_to(&table, n, config.tie_tol) {
            Ok(f) => {
                let mut row = vec![n.into()];
                row.extend(frequency_cells(&f));
                running.push(row);
            }
            // Too few non-degenerate gaps this early.
            Err(CoreError::Empty(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(vec![rows, frequencies, running])
}

fn arcsine(config: &RunConfig, provider: &SpectrumProvider) -> Result<Vec<Section>> {
    let table = provider.table(config, config.max_label)?;
    let params = *table.params();
    let c = params.amplitude();
    let degenerate = c <= 0.0;
    let min_label = DEFAULT_MIN_LABEL.min(config.max_label);

    let mut summary = Section::new(
        "summary",
        &[
            "parity",
            "samples",
            "min_label",
            "max_label",
            "amplitude",
            "ks_distance",
            "degenerate",
        ],
    );
    let mut ecdf_rows = Section::new("ecdf", &["parity", "deviation", "ecdf"]);
    for parity in ParityClass::BOTH {
        let ecdf = empirical_deviation_distribution(&table, parity, min_label);
        let ks = ks_distance(&ecdf, |y| arcsine_cdf(y, &params))?;
        summary.push(vec![
            parity.to_string().into(),
            ecdf.len().into(),
            min_label.into(),
            config.max_label.into(),
            c.into(),
            ks.into(),
            degenerate.into(),
        ]);
        for (value, mass) in ecdf.steps() {
            ecdf_rows.push(vec![parity.to_string().into(), value.into(), mass.into()]);
        }
    }

    // The support [-C, C] collapses when Δ = 0; no grid then.
    let mut cdf = Section::new("cdf", &["y", "cdf"]);
    if !degenerate {
        let last = (CDF_GRID_POINTS - 1) as f64;
        for i in 0..CDF_GRID_POINTS {
            let y = c * (2.0 * i as f64 / last - 1.0);
            cdf.push(vec![y.into(), arcsine_cdf(y, &params).into()]);
        }
    }
    Ok(vec![summary, ecdf_rows, cdf])
}

fn badset(config: &RunConfig) -> Result<Vec<Section>> {
    let g = config.params.g();
    let delta_exp = config.delta_exp;
    let a = 4.0 * g / std::f64::consts::PI;

    let mut ladder = Section::new(
        "ladder",
        &[
            "n_cap",
            "range_len",
            "count",
            "predicted",
            "ratio",
            "bad_fraction",
            "threshold",
        ],
    );
    let mut fejer = Section::new(
        "fejer",
        &[
            "case",
            "a",
            "gamma",
            "alpha",
            "beta",
            "n_cap",
            "count",
            "expected",
            "discrepancy",
            "scaled",
        ],
    );
    let mut points = Vec::new();
    let mut worst_scaled = Vec::new();
    for n_cap in BADSET_LADDER {
        let goodness = Goodness::new(n_cap, delta_exp)?;
        let report = count_bad(n_cap, delta_exp, g)?;
        ladder.push(vec![
            n_cap.into(),
            report.range_len.into(),
            report.count.into(),
            report.predicted.into(),
            report.ratio().into(),
            report.bad_fraction().into(),
            goodness.threshold().into(),
        ]);
        if report.count > 0 {
            points.push(((n_cap as f64).ln(), (report.count as f64).ln()));
        }

        // n is bad exactly when ((a√n + 1/4)) lies within w of an integer.
        let w = goodness.threshold().min(1.0).asin() / std::f64::consts::PI;
        let worst = fejer_grid_worst(a, 0.25, n_cap, FEJER_DIVISIONS)?;
        worst_scaled.push(worst.scaled());
        let cases = [
            ("grid_worst", worst),
            ("full", fejer_count(a, 0.25, 0.0, 1.0, n_cap)?),
            ("bad_low", fejer_count(a, 0.25, 0.0, w, n_cap)?),
            ("bad_high", fejer_count(a, 0.25, 1.0 - w, 1.0, n_cap)?),
            ("unit_half", fejer_count(1.0, 0.0, 0.0, 0.5, n_cap)?),
        ];
        for (case, r) in cases {
            fejer.push(vec![
                case.into(),
                r.a.into(),
                r.gamma.into(),
                r.alpha.into(),
                r.beta.into(),
                r.n_cap.into(),
                r.count.into(),
                r.expected.into(),
                r.discrepancy.into(),
                r.scaled().into(),
            ]);
        }
    }

    let max = worst_scaled
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let min = worst_scaled.iter().copied().fold(f64::INFINITY, f64::min);
    let mut summary = Section::new(
        "summary",
        &[
            "delta_exp",
            "count_slope",
            "expected_exponent",
            "scaled_max",
            "scaled_min",
            "scaled_ratio",
        ],
    );
    summary.push(vec![
        delta_exp.into(),
        least_squares_slope(&points).unwrap_or(f64::NAN).into(),
        (0.75 + delta_exp).into(),
        max.into(),
        min.into(),
        (max / min).into(),
    ]);
    Ok(vec![ladder, fejer, summary])
}
