//! Columnar output documents and their CSV / JSON encodings.
//!
//! JSON layout:
//!
//! ```text
//! { "meta": { "command": …, "parameters": {…}, "tool_version": …,
//!             "tolerances": {…}, … },
//!   "data": { "columns": [...], "rows": [[...], ...] } }
//! ```
//!
//! CSV output carries the metadata as a single `# meta: {json}` comment
//! line, then a header row and data rows; floats are written with 17
//! significant digits so they round-trip exactly.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!(
                "unsupported format {other:?} (expected csv or json)"
            ))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// One table cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
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
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Float(v) => Some(v),
            Cell::Int(v) => Some(v as f64),
            _ => None,
        }
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub tool_version: String,
    pub tolerances: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub results: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Meta {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_owned(),
            parameters: BTreeMap::new(),
            tool_version: TOOL_VERSION.to_owned(),
            tolerances: BTreeMap::new(),
            results: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_owned(), value.into());
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances.insert(key.to_owned(), value);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Numeric values of a column.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_index(name)?;
        self.rows.iter().map(|r| r[i].as_f64()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputDocument {
    pub meta: Meta,
    pub data: Table,
}

impl OutputDocument {
    pub fn new(meta: Meta, data: Table) -> Self {
        Self { meta, data }
    }

    /// Rejects rows of the wrong width and non-finite numbers.
    pub fn validate(&self) -> Result<()> {
        let width = self.data.columns.len();
        for (i, row) in self.data.rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::Output(format!(
                    "row {i} has {} cells, expected {width}",
                    row.len()
                )));
            }
            if let Some(bad) = row
                .iter()
                .find(|c| matches!(c, Cell::Float(v) if !v.is_finite()))
            {
                return Err(Error::Output(format!(
                    "non-finite value {bad:?} in row {i}"
                )));
            }
        }
        Ok(())
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> Result<()> {
        self.validate()?;
        match format {
            Format::Json => self.write_json(out),
            Format::Csv => self.write_csv(out),
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        let mut buf = Vec::new();
        self.write(format, &mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Output(e.to_string()))
    }

    fn write_json<W: Write>(&self, mut out: W) -> Result<()> {
        serde_json::to_writer_pretty(&mut out, self).map_err(|e| Error::Output(e.to_string()))?;
        writeln!(out).map_err(io_err)
    }

    fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let meta = serde_json::to_string(&self.meta).map_err(|e| Error::Output(e.to_string()))?;
        writeln!(out, "# meta: {meta}").map_err(io_err)?;
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.data.columns).map_err(csv_err)?;
        for row in &self.data.rows {
            w.write_record(row.iter().map(Cell::csv_field))
                .map_err(csv_err)?;
        }
        w.flush().map_err(io_err)
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::Output(e.to_string())
}

fn csv_err(e: csv::Error) -> Error {
    Error::Output(e.to_string())
}
