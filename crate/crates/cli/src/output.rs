//! Text rendering of results: CSV and JSON payloads plus the human-readable
//! summaries printed to stderr.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::CliError;
use crate::harness::{ResultRow, SweepRow};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// `v` printed with twelve significant digits, trailing zeros removed.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (SIGNIFICANT_DIGITS as i64 - 1 - magnitude).max(0) as usize;
    let text = format!("{v:.decimals$}");
    if text.contains('.') {
        text.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        text
    }
}

/// Nearest double to `v` rounded to twelve significant digits. Its shortest
/// decimal form is the twelve-digit text, so it prints and parses back
/// unchanged.
pub fn round_sig(v: f64) -> f64 {
    format_sig(v).parse().unwrap_or(v)
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<Vec<u8>, CliError> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| CliError::Input(format!("csv encoding: {e}")))?;
    }
    writer
        .into_inner()
        .map_err(|e| CliError::Input(format!("csv encoding: {e}")))
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| CliError::Input(format!("json encoding: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes `bytes` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::io(path.display(), e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::io("stdout", e))
        }
    }
}

pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

fn spread(values: &mut [f64]) -> String {
    match median(values) {
        Some(med) => format!(
            "{}/{}/{}",
            format_sig(values[0]),
            format_sig(med),
            format_sig(values[values.len() - 1])
        ),
        None => "-".into(),
    }
}

/// Min/median/max modularity and iterations per (graph, solver).
pub fn bench_summary(rows: &[ResultRow]) -> String {
    let mut groups: BTreeMap<(&str, &str), Vec<&ResultRow>> = BTreeMap::new();
    for row in rows {
        groups.entry((&row.graph, row.solver.name())).or_default().push(row);
    }
    let mut text = String::from("graph\tsolver\truns\tfailed\tmodularity min/median/max\titerations min/median/max\n");
    for ((graph, solver), group) in groups {
        let mut modularity: Vec<f64> = group.iter().filter_map(|r| r.modularity).collect();
        let mut iterations: Vec<f64> = group.iter().filter_map(|r| r.iterations.map(|i| i as f64)).collect();
        let failed = group.iter().filter(|r| r.status != "ok").count();
        let _ = writeln!(
            text,
            "{graph}\t{solver}\t{}\t{failed}\t{}\t{}",
            group.len(),
            spread(&mut modularity),
            spread(&mut iterations)
        );
    }
    text
}

/// Median iterations for each requested subset size, in ascending size.
pub fn sweep_medians(rows: &[SweepRow]) -> BTreeMap<usize, f64> {
    let mut by_size: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for row in rows {
        if let Some(i) = row.iterations {
            by_size.entry(row.subset_size).or_default().push(i as f64);
        }
    }
    by_size
        .into_iter()
        .filter_map(|(size, mut its)| median(&mut its).map(|m| (size, m)))
        .collect()
}

pub fn sweep_summary(rows: &[SweepRow]) -> String {
    let mut text = String::from("subset_size\tclamped\tmedian_iterations\n");
    for (size, med) in sweep_medians(rows) {
        let clamped = rows.iter().any(|r| r.subset_size == size && r.clamped);
        let _ = writeln!(text, "{size}\t{clamped}\t{}", format_sig(med));
    }
    text
}
