use std::io::{self, Write};

use hjrsp::analysis::FidelityPoint;
use hjrsp::protocol::{OutcomeRecord, TableRecord};
use serde::Deserialize;

pub const CSV_HEADER: [&str; 10] = [
    "channel",
    "param_name",
    "param_value",
    "theta",
    "phi",
    "reconstructor",
    "averaging",
    "f_sim",
    "f_closed",
    "abs_diff",
];

/// Twelve significant digits with a lowercase exponent.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.11e}")
}

/// A fidelity CSV row as read back.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct CsvRow {
    pub channel: String,
    pub param_name: String,
    pub param_value: f64,
    pub theta: f64,
    pub phi: f64,
    pub reconstructor: String,
    pub averaging: String,
    pub f_sim: f64,
    pub f_closed: Option<f64>,
    pub abs_diff: Option<f64>,
}

pub fn write_points<W: Write>(out: W, points: &[FidelityPoint]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for p in points {
        let opt = |v: Option<f64>| v.map(fmt_real).unwrap_or_default();
        w.write_record([
            p.family.name().to_string(),
            p.family.param_name().to_string(),
            fmt_real(p.param_value),
            fmt_real(p.theta),
            fmt_real(p.phi),
            p.reconstructor.label().to_string(),
            p.averaging.label().to_string(),
            fmt_real(p.f_sim),
            opt(p.f_closed),
            opt(p.abs_diff),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_points<R: io::Read>(input: R) -> csv::Result<Vec<CsvRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

pub fn write_table<W: Write>(out: W, rows: &[TableRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Per-branch table for `ideal` and `prob`.
pub fn write_branches<W: Write>(mut out: W, records: &[OutcomeRecord]) -> io::Result<()> {
    writeln!(
        out,
        "{:<4} {:<4} {:<10} {:<4} {:<4} {:<4} {:>12} {:>10} {:<7}",
        "a1", "a2", "helpers", "anc", "U", "corr", "probability", "fidelity", "success"
    )?;
    for r in records {
        let helpers: Vec<String> = r
            .helpers
            .iter()
            .map(|h| format!("{}={}", &h.agent.label()[3..], h.symbol()))
            .collect();
        writeln!(
            out,
            "{:<4} {:<4} {:<10} {:<4} {:<4} {:<4} {:>12.6} {:>10.6} {:<7}",
            format!("u{}", r.alice1.index()),
            format!("v{}", r.alice2.index()),
            if helpers.is_empty() {
                "-".to_string()
            } else {
                helpers.join(",")
            },
            r.ancilla
                .map(|a| a.index().to_string())
                .unwrap_or_else(|| "-".into()),
            r.unitary_used.map(|u| u.label()).unwrap_or("-"),
            r.correction.map(|c| c.label()).unwrap_or("-"),
            r.branch_probability,
            r.fidelity,
            r.success,
        )?;
    }
    Ok(())
}
