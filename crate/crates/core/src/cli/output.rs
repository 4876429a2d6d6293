//! Tables written as CSV or JSON, each carrying the resolved config.

use serde::Serialize;
use serde_json::{json, Map, Value};
use std::io::Write;

use super::config::Format;
use crate::error::Error;

pub const ARTIFACT: &str = "relwell";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Cell::Num(x)
        } else {
            Cell::Empty
        }
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<u32> for Cell {
    fn from(x: u32) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// A failure attached to one row (or to the whole run when `row` is absent).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord {
    pub row: Option<usize>,
    pub kind: &'static str,
    pub message: String,
}

impl ErrorRecord {
    pub fn new(row: Option<usize>, e: &Error) -> Self {
        Self {
            row,
            kind: error_kind(e),
            message: e.to_string(),
        }
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Domain(_) => "domain",
        Error::DegenerateGeometry(_) => "degenerate_geometry",
        Error::Convergence(_) => "convergence",
        Error::Accuracy(_) => "accuracy",
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub command: String,
    pub config: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
    pub errors: Vec<ErrorRecord>,
    /// Set by checks whose verdict is negative without any error.
    pub failed: bool,
}

impl Table {
    pub fn new(command: &str, config: Value, columns: Vec<&'static str>) -> Self {
        Self {
            command: command.to_string(),
            config,
            columns,
            rows: Vec::new(),
            summary: Map::new(),
            errors: Vec::new(),
            failed: false,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Records a summary entry; non-finite numbers become `null`.
    pub fn note(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.summary.insert(key.to_string(), v);
    }

    pub fn fail(&mut self, row: Option<usize>, e: &Error) {
        self.errors.push(ErrorRecord::new(row, e));
    }

    pub fn has_numerical_failure(&self) -> bool {
        self.errors.iter().any(|r| r.kind == "convergence" || r.kind == "accuracy")
    }

    fn errors_json(&self) -> Value {
        serde_json::to_value(&self.errors).unwrap_or(Value::Null)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "# artifact: {ARTIFACT} {VERSION}")?;
        writeln!(out, "# command: {}", self.command)?;
        writeln!(out, "# config: {}", self.config)?;
        writeln!(out, "# summary: {}", Value::Object(self.summary.clone()))?;
        writeln!(out, "# errors: {}", self.errors_json())?;
        if self.columns.is_empty() {
            return Ok(());
        }
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        json!({
            "artifact": ARTIFACT,
            "version": VERSION,
            "command": self.command,
            "config": self.config,
            "columns": self.columns,
            "rows": rows,
            "summary": Value::Object(self.summary.clone()),
            "errors": self.errors_json(),
        })
    }

    fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
        writeln!(out)
    }
}
