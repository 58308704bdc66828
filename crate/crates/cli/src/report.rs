//! Tabular reports and their CSV/JSON encodings.
//!
//! Numbers are written in Rust's shortest round-trip form, so a value read
//! back from either format is bit-identical to the one computed.

use std::io::Write;

use serde_json::{Map, Value as Json};

use crate::config::OutputFormat;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    /// No value, e.g. at a singular grid point.
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format_num(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(*x).map_or(Json::Null, Json::Number),
            Cell::Int(n) => Json::from(*n),
            Cell::Text(s) => Json::from(s.as_str()),
            Cell::Missing => Json::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as i64)
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

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(if b { "pass" } else { "fail" }.into())
    }
}

pub fn format_num(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Report {
            columns: columns.to_vec(),
            ..Report::default()
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn write(&self, format: OutputFormat, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => self.write_json(out),
        }
    }

    /// Header and rows, then the summary and notes as `#` comment lines.
    fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(&self.columns)?;
            for row in &self.rows {
                w.write_record(row.iter().map(Cell::csv))?;
            }
            w.flush()?;
        }
        for (k, v) in &self.summary {
            writeln!(out, "# {k}={}", v.csv())?;
        }
        for n in &self.notes {
            writeln!(out, "# note: {n}")?;
        }
        Ok(())
    }

    fn write_json(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Json> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.to_string(), v.json()))
                    .collect();
                Json::Object(obj)
            })
            .collect();
        let mut summary: Map<String, Json> = self
            .summary
            .iter()
            .map(|(k, v)| (k.to_string(), v.json()))
            .collect();
        summary.insert(
            "notes".into(),
            Json::Array(self.notes.iter().map(|n| Json::from(n.as_str())).collect()),
        );
        let mut doc = Map::new();
        doc.insert("rows".into(), Json::Array(rows));
        doc.insert("summary".into(), Json::Object(summary));
        serde_json::to_writer_pretty(&mut *out, &Json::Object(doc))?;
        writeln!(out)?;
        Ok(())
    }
}
