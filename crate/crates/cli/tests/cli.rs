use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command as Process;

use clap::Parser;
use rabi_cli::cache::{CacheKey, SpectrumCache};
use rabi_cli::{run, Cli, Outcome};
use rabi_core::braak::{count_bad, fejer_count};
use rabi_core::ParityClass;
use serde_json::Value as Json;

fn invoke(args: &[&str]) -> Outcome {
    let cli = Cli::try_parse_from(std::iter::once("rabi").chain(args.iter().copied())).unwrap();
    run(&cli).unwrap()
}

fn invoke_cached(dir: &Path, args: &[&str]) -> Outcome {
    let mut all = args.to_vec();
    all.extend(["--cache-dir", dir.to_str().unwrap()]);
    invoke(&all)
}

/// Sections of a CSV report: name → (header, rows).
fn parse_csv(text: &str) -> BTreeMap<String, (Vec<String>, Vec<Vec<String>>)> {
    let mut out = BTreeMap::new();
    for block in text.split("\n\n") {
        let mut lines = block.lines().peekable();
        let name = match lines.peek() {
            Some(l) if l.starts_with("# ") => lines.next().unwrap()[2..].to_owned(),
            _ => String::new(),
        };
        let split = |l: &str| l.split(',').map(str::to_owned).collect::<Vec<_>>();
        let header = split(lines.next().unwrap());
        let rows = lines.map(split).collect();
        out.insert(name, (header, rows));
    }
    out
}

fn column<'a>(header: &[String], rows: &'a [Vec<String>], name: &str) -> Vec<&'a str> {
    let i = header.iter().position(|h| h == name).unwrap();
    rows.iter().map(|r| r[i].as_str()).collect()
}

#[test]
fn displaced_oscillator_spectrum() {
    let out = invoke(&["spectrum", "--delta", "0", "--n-max", "10", "--no-cache"]);
    let csv = parse_csv(&out.output);
    let (header, rows) = &csv[""];
    assert_eq!(
        header.join(","),
        "n,parity,eigenvalue,shifted,truncation_dim,error_estimate"
    );
    assert_eq!(rows.len(), 20);
    for x in column(header, rows, "shifted") {
        let x: f64 = x.parse().unwrap();
        assert!((x - x.round()).abs() < 1e-6);
    }
}

#[test]
fn reference_row_at_label_100() {
    let out = invoke(&["spectrum", "--n-max", "100", "--no-cache"]);
    let csv = parse_csv(&out.output);
    let (header, rows) = &csv[""];
    let row = rows
        .iter()
        .find(|r| r[0] == "100" && r[1] == "minus")
        .unwrap();
    let value: f64 = row[header.iter().position(|h| h == "eigenvalue").unwrap()]
        .parse()
        .unwrap();
    assert!((value - 99.51).abs() < 0.05, "{value}");
}

#[test]
fn warm_cache_skips_the_solver() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["spectrum", "--n-max", "150"];
    let cold = invoke_cached(dir.path(), &args);
    assert_eq!(cold.solver_calls, 2);
    let warm = invoke_cached(dir.path(), &args);
    assert_eq!(warm.solver_calls, 0);
    assert_eq!(warm.output, cold.output);
    let uncached = invoke(&["spectrum", "--n-max", "150", "--no-cache"]);
    assert_eq!(uncached.output, cold.output);
    // A different key does not hit.
    let other = invoke_cached(dir.path(), &["spectrum", "--n-max", "151"]);
    assert_eq!(other.solver_calls, 2);
}

#[test]
fn corrupted_cache_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["spectrum", "--n-max", "80"];
    let clean = invoke_cached(dir.path(), &args);

    let key = CacheKey::new(0.7, 0.4, ParityClass::Minus, 1e-10, 1e-8, 80);
    let cache = SpectrumCache::new(dir.path());
    let payload = cache.payload_path(&key);
    let mut bytes = fs::read(&payload).unwrap();
    let middle = bytes.len() / 2;
    bytes[middle] ^= 0x40;
    fs::write(&payload, &bytes).unwrap();

    let rerun = invoke_cached(dir.path(), &args);
    assert_eq!(rerun.solver_calls, 1);
    assert_eq!(rerun.output, clean.output);
    // The entry was rewritten.
    assert_eq!(invoke_cached(dir.path(), &args).solver_calls, 0);

    fs::write(cache.sidecar_path(&key), b"garbage").unwrap();
    let rerun = invoke_cached(dir.path(), &args);
    assert_eq!(rerun.solver_calls, 1);
    assert_eq!(rerun.output, clean.output);
}

fn assert_same_content(csv_text: &str, json_text: &str) {
    let csv = parse_csv(csv_text);
    let json: Json = serde_json::from_str(json_text).unwrap();
    let sections: Vec<_> = json
        .as_object()
        .unwrap()
        .keys()
        .filter(|k| *k != "command")
        .collect();
    assert_eq!(sections.len(), csv.len());
    for name in sections {
        let key = if csv.len() == 1 { "" } else { name.as_str() };
        let (header, rows) = &csv[key];
        let objects = json[name].as_array().unwrap();
        assert_eq!(objects.len(), rows.len(), "{name}");
        for (row, object) in rows.iter().zip(objects) {
            let keys: Vec<_> = object.as_object().unwrap().keys().collect();
            assert_eq!(keys, header.iter().collect::<Vec<_>>());
            for (cell, h) in row.iter().zip(header) {
                match &object[h] {
                    Json::Number(n) => {
                        let parsed: f64 = cell.parse().unwrap();
                        assert_eq!(
                            parsed.to_bits(),
                            n.as_f64().unwrap().to_bits(),
                            "{name}.{h}: {cell}"
                        );
                    }
                    Json::Null => assert!(cell.parse::<f64>().unwrap().is_nan()),
                    Json::Bool(b) => assert_eq!(cell, &b.to_string()),
                    Json::String(s) => assert_eq!(cell, s),
                    other => panic!("unexpected {other}"),
                }
            }
        }
    }
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    let dir = tempfile::tempdir().unwrap();
    for command in ["spectrum", "classify", "spacings", "arcsine", "badset"] {
        let csv = invoke_cached(dir.path(), &[command, "--n-max", "120"]);
        let json = invoke_cached(dir.path(), &[command, "--n-max", "120", "--format", "json"]);
        let parsed: Json = serde_json::from_str(&json.output).unwrap();
        assert_eq!(parsed["command"], command);
        assert_same_content(&csv.output, &json.output);
    }
}

#[test]
fn reports_are_deterministic() {
    for command in ["classify", "spacings", "arcsine", "badset"] {
        let a = invoke(&[command, "--n-max", "90", "--no-cache"]);
        let b = invoke(&[command, "--n-max", "90", "--no-cache"]);
        assert_eq!(a.output, b.output, "{command}");
    }
}

#[test]
fn classify_without_splitting_is_all_boundary() {
    let out = invoke(&["classify", "--delta", "0", "--n-max", "40", "--no-cache"]);
    let csv = parse_csv(&out.output);
    let (header, rows) = &csv["intervals"];
    assert!(!rows.is_empty());
    assert!(column(header, rows, "verdict")
        .iter()
        .all(|v| *v == "boundary"));
    assert!(column(header, rows, "pattern")
        .iter()
        .all(|v| *v == "unclassified"));
}

#[test]
fn classify_bad_count_matches_enumeration() {
    let out = invoke(&[
        "classify",
        "--n-max",
        "256",
        "--no-cache",
        "--format",
        "json",
    ]);
    let json: Json = serde_json::from_str(&out.output).unwrap();
    let summary = &json["summary"][0];
    let expected = count_bad(256, 0.05, 0.7).unwrap();
    assert_eq!(summary["bad"].as_u64().unwrap() as usize, expected.count);
    assert_eq!(
        summary["intervals"].as_u64().unwrap() as usize,
        expected.range_len
    );
    assert_eq!(summary["fail"], 0);
}

#[test]
fn arcsine_reports() {
    let out = invoke(&[
        "arcsine",
        "--n-max",
        "200",
        "--no-cache",
        "--format",
        "json",
    ]);
    let json: Json = serde_json::from_str(&out.output).unwrap();
    let grid = json["cdf"].as_array().unwrap();
    assert_eq!(grid.len(), 512);
    assert_eq!(grid[0]["cdf"], 0.0);
    assert_eq!(grid[511]["cdf"], 1.0);
    let c = json["summary"][0]["amplitude"].as_f64().unwrap();
    assert_eq!(grid[0]["y"].as_f64().unwrap(), -c);
    assert_eq!(grid[511]["y"].as_f64().unwrap(), c);

    let flat = invoke(&[
        "arcsine",
        "--delta",
        "0",
        "--n-max",
        "60",
        "--no-cache",
        "--format",
        "json",
    ]);
    let json: Json = serde_json::from_str(&flat.output).unwrap();
    for row in json["summary"].as_array().unwrap() {
        assert_eq!(row["degenerate"], true);
    }
    assert!(json["cdf"].as_array().unwrap().is_empty());
}

#[test]
fn spacing_report_frequencies() {
    let out = invoke(&[
        "spacings",
        "--n-max",
        "300",
        "--no-cache",
        "--format",
        "json",
    ]);
    let json: Json = serde_json::from_str(&out.output).unwrap();
    let f = &json["frequencies"][0];
    let total: u64 = ["positive", "negative", "mixed", "excluded"]
        .iter()
        .map(|k| f[k].as_u64().unwrap())
        .sum();
    assert_eq!(total, 599);
    assert_eq!(json["spacings"].as_array().unwrap().len(), 599);
    let running = json["running"].as_array().unwrap();
    assert_eq!(running.last().unwrap()["n"], 300);
    assert_eq!(running.last().unwrap()["f_mixed"], f["f_mixed"]);
}

#[test]
fn badset_report() {
    let out = invoke(&["badset", "--format", "json"]);
    let json: Json = serde_json::from_str(&out.output).unwrap();
    for row in json["fejer"].as_array().unwrap() {
        if row["case"] == "full" {
            assert!(row["discrepancy"].as_f64().unwrap() <= 1.0);
        }
    }
    let ladder = json["ladder"].as_array().unwrap();
    let fractions: Vec<f64> = ladder
        .iter()
        .map(|r| r["bad_fraction"].as_f64().unwrap())
        .collect();
    assert!(
        fractions[0] > fractions[1] && fractions[1] > fractions[2],
        "{fractions:?}"
    );
    // The two bad windows together count the bad n.
    for r in ladder {
        let n_cap = &r["n_cap"];
        let window: u64 = json["fejer"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|f| f["n_cap"] == *n_cap && (f["case"] == "bad_low" || f["case"] == "bad_high"))
            .map(|f| f["count"].as_u64().unwrap())
            .sum();
        assert_eq!(window, r["count"].as_u64().unwrap());
    }
    let slope = json["summary"][0]["count_slope"].as_f64().unwrap();
    assert!((0.6..=0.95).contains(&slope), "{slope}");

    let half = fejer_count(1.0, 0.0, 0.0, 0.5, 10_000).unwrap();
    assert!(
        (half.count as f64 - 2500.0).abs() <= 2.0 * 100.0,
        "{}",
        half.count
    );
}

fn binary(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_rabi"))
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn exit_codes() {
    for args in [
        &["spectrum", "--g", "-1"][..],
        &["spectrum", "--delta-exp", "0.3"],
        &["spectrum", "--n-max", "0"],
        &["spectrum", "--tol", "0"],
        &["spectrum", "--format", "xml"],
        &["frobnicate"],
    ] {
        let out = binary(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }

    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("no/such/dir/report.csv");
    let out = binary(&[
        "spectrum",
        "--n-max",
        "5",
        "--no-cache",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));

    let blocker = dir.path().join("file");
    fs::write(&blocker, "").unwrap();
    let out = binary(&[
        "spectrum",
        "--n-max",
        "5",
        "--cache-dir",
        blocker.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn binary_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("out.csv");
    let args = ["spectrum", "--n-max", "60", "--no-cache"];
    let first = binary(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(binary(&args).stdout, first.stdout);

    let mut with_out = args.to_vec();
    with_out.extend(["--out", report.to_str().unwrap()]);
    let written = binary(&with_out);
    assert_eq!(written.status.code(), Some(0));
    assert!(written.stdout.is_empty());
    assert_eq!(fs::read(&report).unwrap(), first.stdout);
}
