//! Text renderings of verification reports: JSON, CSV and a human summary.
//!
//! Record fields are `identity`, `coords`, `class`, `residual`; the output
//! for a given report is byte-stable.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::verify::{Classification, PointOutcome, SuiteReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

pub fn render(report: &SuiteReport, format: Format) -> Result<String> {
    match format {
        Format::Human => Ok(human(report)),
        Format::Json => json(report),
        Format::Csv => csv(report),
    }
}

pub fn json(report: &SuiteReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| Error::Config(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn class_name(c: Classification) -> &'static str {
    match c {
        Classification::Pass => "pass",
        Classification::Fail => "fail",
        Classification::PoleSkip => "pole_skip",
        Classification::SlowSkip => "slow_skip",
    }
}

fn coords_text(o: &PointOutcome) -> String {
    o.coords
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

#[derive(Serialize)]
struct CsvRow<'a> {
    identity: String,
    coords: String,
    class: &'a str,
    residual: Option<f64>,
    tolerance: f64,
    detail: &'a str,
}

pub fn csv(report: &SuiteReport) -> Result<String> {
    let mut w = ::csv::Writer::from_writer(Vec::new());
    for r in &report.reports {
        for o in &r.outcomes {
            w.serialize(CsvRow {
                identity: o.identity.to_string(),
                coords: coords_text(o),
                class: class_name(o.classification),
                residual: o.residual,
                tolerance: o.tolerance,
                detail: &o.detail,
            })
            .map_err(|e| Error::Config(e.to_string()))?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
    let mut out = String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))?;
    let c = report.summary.counts;
    let _ = writeln!(
        out,
        "# summary,pass={},fail={},pole_skip={},slow_skip={},max_residual={:e}",
        c.pass, c.fail, c.pole_skip, c.slow_skip, report.summary.max_residual
    );
    Ok(out)
}

pub fn human(report: &SuiteReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<24} {:>6} {:>6} {:>6} {:>6}  {:>10}",
        "identity", "pass", "fail", "pole", "slow", "max resid"
    );
    for r in &report.reports {
        let c = r.counts;
        let _ = writeln!(
            out,
            "{:<24} {:>6} {:>6} {:>6} {:>6}  {:>10.3e}{}",
            r.grid.identity.to_string(),
            c.pass,
            c.fail,
            c.pole_skip,
            c.slow_skip,
            r.max_residual,
            if r.skip_warning {
                "  (skip warning)"
            } else {
                ""
            }
        );
        for o in r
            .outcomes
            .iter()
            .filter(|o| o.classification == Classification::Fail)
        {
            let _ = writeln!(
                out,
                "    FAIL {} residual {:.3e} > {:.1e}",
                coords_text(o),
                o.residual.unwrap_or(f64::NAN),
                o.tolerance
            );
        }
    }
    let c = report.summary.counts;
    let _ = writeln!(
        out,
        "total: {} pass, {} fail, {} pole-skip, {} slow-skip over {} grids; max residual {:.3e}",
        c.pass, c.fail, c.pole_skip, c.slow_skip, report.summary.grids, report.summary.max_residual
    );
    for w in &report.summary.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
