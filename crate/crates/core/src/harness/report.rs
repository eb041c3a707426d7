//! Rendering an [`ExtremalRecord`] as JSON, CSV or text.

use std::fmt::Write as _;
use std::str::FromStr;

use super::scan::ExtremalRecord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "text" => Ok(ReportFormat::Text),
            _ => Err(Error::InvalidParams(format!("unknown report format {s:?}"))),
        }
    }
}

pub const CSV_COLUMNS: [&str; 9] =
    ["check", "t", "n", "graphs", "counterexamples", "extremum", "witness", "tallies", "label"];

pub fn render(record: &ExtremalRecord, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(record).map_err(|e| Error::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => csv(record),
        ReportFormat::Text => Ok(text(record)),
    }
}

fn tallies(row: &super::scan::OrderRow) -> String {
    row.tallies.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";")
}

fn csv(record: &ExtremalRecord) -> Result<String> {
    let io = |e: csv::Error| Error::Io(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).map_err(io)?;
    for row in &record.rows {
        let (value, witness) = match &row.extremum {
            Some(e) => (e.value.clone(), e.graph.replace('\n', " ")),
            None => (String::new(), String::new()),
        };
        w.write_record([
            record.spec.check.as_str().to_string(),
            record.spec.t.to_string(),
            row.n.to_string(),
            row.graphs.to_string(),
            row.counterexamples.to_string(),
            value,
            witness,
            tallies(row),
            record.label.clone(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn text(record: &ExtremalRecord) -> String {
    let mut s = String::new();
    let spec = &record.spec;
    let _ = writeln!(s, "check {} t={} n<={} ({})", spec.check, spec.t, spec.n, record.label);
    let _ = writeln!(s, "claim: {}", record.claim);
    let _ = writeln!(s, "metric: {}", record.metric);
    let _ = writeln!(s, "corpus: {}", record.prng);
    for row in &record.rows {
        let ext = row.extremum.as_ref().map_or("-".to_string(), |e| e.value.clone());
        let _ = writeln!(
            s,
            "  n={:<2} graphs={:<7} counterexamples={:<4} extremum={:<6} {}",
            row.n,
            row.graphs,
            row.counterexamples,
            ext,
            tallies(row)
        );
    }
    let kind = if record.theorem_backed { "defects" } else { "counterexamples" };
    let _ = writeln!(s, "{kind}: {}", record.counterexamples);
    for f in &record.findings {
        let _ = writeln!(s, "  n={} {}: {}", f.n, f.graph.replace('\n', " "), f.detail);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::scan::{run_scan, CheckName, Corpus, ScanSpec};

    #[test]
    fn formats_agree_on_rows() {
        let spec = ScanSpec { check: CheckName::TildeIdentity, t: 0, n: 4, corpus: Corpus::All };
        let r = run_scan(&spec).unwrap();
        let json = render(&r, ReportFormat::Json).unwrap();
        let back: ExtremalRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let csv = render(&r, ReportFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("check,t,n,graphs"));
        let text = render(&r, ReportFormat::Text).unwrap();
        assert!(text.contains("claim: chi(G) = chi_b(G~)"));
        assert!(text.contains("bounded-order estimates"));
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
