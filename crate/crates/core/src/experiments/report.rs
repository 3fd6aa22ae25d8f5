//! CSV reports with a `#`-prefixed header block.

use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Version string written into every report header.
pub const ARTIFACT_VERSION: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

/// One CSV cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    /// Pass/fail; `None` for informational rows.
    Verdict(Option<bool>),
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    /// Floats carry 17 significant digits.
    pub fn render(&self) -> String {
        match self {
            Cell::Float(v) => format_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Verdict(Some(true)) => "PASS".into(),
            Cell::Verdict(Some(false)) => "FAIL".into(),
            Cell::Verdict(None) => "info".into(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Float(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

/// A finished experiment: header lines, fixed columns and rows, and an
/// overall verdict when the experiment has one.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub experiment: String,
    /// `key = value` lines echoed after the version line.
    pub header: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub verdict: Option<bool>,
}

impl Report {
    pub fn new(experiment: &str, columns: &[&str]) -> Self {
        Self {
            experiment: experiment.into(),
            header: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            verdict: None,
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.header.push(line.into());
    }

    /// Echoes a config text, one header line per key.
    pub fn echo_config(&mut self, text: &str) {
        for line in text.lines() {
            self.header.push(format!("config: {line}"));
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidParameter(format!(
                "row has {} cells, report has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Rows whose `key` column renders as `value`.
    pub fn rows_where<'a>(&'a self, key: &str, value: &'a str) -> impl Iterator<Item = &'a Vec<Cell>> + 'a {
        let idx = self.column(key);
        self.rows
            .iter()
            .filter(move |r| idx.is_some_and(|i| r[i].render() == value))
    }

    /// Writes the header block and CSV body.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# {ARTIFACT_VERSION}")?;
        writeln!(w, "# experiment = {}", self.experiment)?;
        for line in &self.header {
            writeln!(w, "# {line}")?;
        }
        let verdict = match self.verdict {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "none",
        };
        writeln!(w, "# verdict = {verdict}")?;
        let mut csv = csv::Writer::from_writer(w);
        csv.write_record(&self.columns).map_err(csv_error)?;
        for row in &self.rows {
            csv.write_record(row.iter().map(Cell::render)).map_err(csv_error)?;
        }
        csv.flush()?;
        Ok(())
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        buf
    }
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidParameter(format!("csv: {other:?}")),
    }
}

pub fn write_report(report: &Report, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    report.write_to(std::io::BufWriter::new(file))
}
