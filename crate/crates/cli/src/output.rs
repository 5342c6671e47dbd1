//! CSV and JSON emission.
//!
//! Floats are written in shortest round-trip form, so identical runs give
//! byte-identical files.

use std::fs;
use std::io::{self, Write};

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Num(f64),
    Missing,
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Num(v) => fmt_float(*v),
            Cell::Missing => String::new(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Num(v) => json_float(*v),
            Cell::Missing => Value::Null,
            Cell::Text(s) => json!(s),
        }
    }
}

pub fn fmt_float(v: f64) -> String {
    format!("{v:?}")
}

/// Non-finite values become `null`.
pub fn json_float(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn json_floats(vs: &[f64]) -> Value {
    Value::Array(vs.iter().map(|&v| json_float(v)).collect())
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> =
                        self.header.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// The result of a command before it is written out.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: Table,
    pub coefficients: Value,
    pub summary: Value,
    /// Human-readable summary, sent to stderr in CSV mode.
    pub notes: Vec<String>,
}

impl Report {
    pub fn table(table: Table) -> Self {
        Self {
            table,
            coefficients: Value::Null,
            summary: Value::Null,
            notes: Vec::new(),
        }
    }

    pub fn render(&self, config: &RunConfig) -> Result<String> {
        Ok(match config.format {
            Format::Csv => self.table.to_csv(),
            Format::Json => {
                let doc = json!({
                    "config": config,
                    "coefficients": self.coefficients,
                    "rows": self.table.to_json_rows(),
                    "summary": self.summary,
                });
                let mut s = serde_json::to_string_pretty(&doc)?;
                s.push('\n');
                s
            }
        })
    }

    pub fn emit(&self, config: &RunConfig) -> Result<()> {
        let text = self.render(config)?;
        match &config.out {
            Some(path) => fs::write(path, text).with_context(|| format!("--out {}", path.display()))?,
            None => io::stdout().lock().write_all(text.as_bytes())?,
        }
        if config.format == Format::Csv {
            let mut err = io::stderr().lock();
            for note in &self.notes {
                writeln!(err, "{note}")?;
            }
        }
        Ok(())
    }
}
