use std::io::Write;

use clap::ValueEnum;
use dyckhike::boson::RatRadical;
use num::BigRational;
use serde_json::{json, Map, Value};

use crate::error::CliError;

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// One command's result in every output shape.
pub struct Report {
    pub command: &'static str,
    /// Command-specific JSON fields; `schema_version` and `command` are added.
    pub fields: Map<String, Value>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Replaces the table in plain output when set.
    pub plain: Option<String>,
    /// Process exit status after a successful write.
    pub exit_code: u8,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            fields: Map::new(),
            headers: Vec::new(),
            rows: Vec::new(),
            plain: None,
            exit_code: 0,
        }
    }

    pub fn field(mut self, key: &str, value: Value) -> Self {
        self.fields.insert(key.to_string(), value);
        self
    }

    pub fn table(mut self, headers: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.headers = headers.iter().map(|h| h.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn plain(mut self, text: String) -> Self {
        self.plain = Some(text);
        self
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<(), CliError> {
        match format {
            Format::Json => {
                let mut obj = self.fields.clone();
                obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
                obj.insert("command".into(), json!(self.command));
                serde_json::to_writer_pretty(&mut *out, &Value::Object(obj))
                    .map_err(|e| CliError::Internal(e.to_string()))?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.headers)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
            Format::Plain => match &self.plain {
                Some(text) => writeln!(out, "{text}")?,
                None => write_aligned(&self.headers, &self.rows, out)?,
            },
        }
        Ok(())
    }
}

fn write_aligned(headers: &[String], rows: &[Vec<String>], out: &mut impl Write) -> std::io::Result<()> {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(headers))?;
    for row in rows {
        writeln!(out, "{}", line(row))?;
    }
    Ok(())
}

/// Exact scalar as `{rational, radicand, float, display}`.
pub fn exact(v: &RatRadical) -> Value {
    json!({
        "rational": v.rational().to_string(),
        "radicand": v.radicand().to_string(),
        "float": finite_or_null(v.to_f64()),
        "display": v.to_string(),
    })
}

pub fn exact_rational(q: &BigRational) -> Value {
    exact(&RatRadical::from_rational(q.clone()))
}

/// JSON has no infinities; out-of-range floats become `null`.
pub fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn float_cell(x: f64) -> String {
    format!("{x:.12e}")
}
