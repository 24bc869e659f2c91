//! Solve reports as JSON lines, plus a CSV summary.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::report::SolveReport;

/// Appends one report as a single JSON line.
pub fn append_report<W: Write>(report: &SolveReport, mut out: W) -> Result<()> {
    let line = serde_json::to_string(report).map_err(|e| Error::BadParameter(e.to_string()))?;
    writeln!(out, "{line}")?;
    Ok(())
}

/// Reads every report from a JSON-lines stream, skipping blank lines.
pub fn read_reports<R: BufRead>(input: R) -> Result<Vec<SolveReport>> {
    let mut reports = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let report = serde_json::from_str(&line).map_err(|e| Error::parse(i + 1, e.to_string()))?;
        reports.push(report);
    }
    Ok(reports)
}

const CSV_COLUMNS: [&str; 11] = [
    "instance",
    "algorithm",
    "seed",
    "objective",
    "lower_bound",
    "approx_ratio",
    "edge_satisfaction",
    "wall_time_secs",
    "nodes",
    "edges",
    "categories",
];

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes reports as CSV with a header row; missing values are empty cells.
pub fn write_reports_csv<W: Write>(reports: &[SolveReport], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::BadParameter(format!("csv: {e}"));
    writer.write_record(CSV_COLUMNS).map_err(csv_err)?;
    for r in reports {
        writer
            .write_record([
                r.instance.clone().unwrap_or_default(),
                r.algorithm.clone(),
                opt(r.seed),
                r.objective.to_string(),
                opt(r.lower_bound),
                opt(r.approx_ratio),
                opt(r.edge_satisfaction),
                r.wall_time_secs.to_string(),
                r.nodes.to_string(),
                r.edges.to_string(),
                r.categories.to_string(),
            ])
            .map_err(csv_err)?;
    }
    writer.flush()?;
    Ok(())
}
