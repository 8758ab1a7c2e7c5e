//! Deterministic CSV and JSON rendering.
//!
//! Floats print with 17 significant digits so files round-trip exactly and
//! repeated runs with the same config and seed are bit-identical. Complex
//! values appear as paired `re_<name>`, `im_<name>` columns.

use serde::Serialize;
use std::collections::BTreeMap;

/// Render a float with 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Incremental CSV writer with a fixed header.
pub struct CsvTable {
    columns: usize,
    buffer: String,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            columns: header.len(),
            buffer: format!("{}\n", header.join(",")),
        }
    }

    pub fn row(&mut self, cells: &[CsvCell]) {
        assert_eq!(cells.len(), self.columns, "row width mismatch");
        let rendered: Vec<String> = cells
            .iter()
            .map(|c| match c {
                CsvCell::Int(v) => v.to_string(),
                CsvCell::Float(v) => fmt_float(*v),
            })
            .collect();
        self.buffer.push_str(&rendered.join(","));
        self.buffer.push('\n');
    }

    pub fn finish(self) -> String {
        self.buffer
    }
}

#[derive(Debug, Clone, Copy)]
pub enum CsvCell {
    Int(i64),
    Float(f64),
}

impl From<f64> for CsvCell {
    fn from(v: f64) -> Self {
        CsvCell::Float(v)
    }
}

impl From<i64> for CsvCell {
    fn from(v: i64) -> Self {
        CsvCell::Int(v)
    }
}

/// One named pass/fail check in the run summary.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, pass: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

/// Machine-readable run summary written to `summary.json`.
///
/// Deterministic given config and seed: scalars are sorted by key and no
/// timing information is recorded here (wall time goes to stdout).
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub scenario: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<Check>,
    pub scalars: BTreeMap<String, f64>,
}

impl RunSummary {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}
