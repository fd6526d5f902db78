use std::fs::{self, File};
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Map, Value};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Empty,
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Field {
    /// Finite floats only; infinities and NaN become empty cells.
    pub fn float(x: f64) -> Field {
        if x.is_finite() {
            Field::Float(x)
        } else {
            Field::Empty
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Field::Empty => String::new(),
            Field::Int(v) => v.to_string(),
            Field::Float(v) if *v != 0.0 && (v.abs() >= 1e15 || v.abs() < 1e-5) => format!("{v:e}"),
            Field::Float(v) => v.to_string(),
            Field::Bool(v) => v.to_string(),
            Field::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Field::Empty => Value::Null,
            Field::Int(v) => json!(v),
            Field::Float(v) => json!(v),
            Field::Bool(v) => json!(v),
            Field::Text(s) if s.is_empty() => Value::Null,
            Field::Text(s) => json!(s),
        }
    }
}

pub struct Table {
    pub schema: &'static str,
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Field>>,
}

impl Table {
    fn render(&self, format: Format) -> Result<Vec<u8>> {
        let mut buf = Vec::new();
        match format {
            Format::Csv => {
                writeln!(buf, "# schema: {}", self.schema)?;
                for (k, v) in &self.meta {
                    writeln!(buf, "# {k}: {v}")?;
                }
                let mut w = csv::Writer::from_writer(&mut buf);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Field::to_csv))?;
                }
                w.flush()?;
            }
            Format::Json => {
                let meta: Map<String, Value> = self.meta.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(Field::to_json)).collect()))
                    .collect();
                let doc = json!({ "schema": self.schema, "metadata": meta, "columns": self.columns, "rows": rows });
                serde_json::to_writer_pretty(&mut buf, &doc)?;
                buf.push(b'\n');
            }
        }
        Ok(buf)
    }

    /// Writes the table to `out` (or stdout); a partially written file is removed.
    pub fn emit(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let bytes = self.render(format)?;
        match out {
            None => {
                io::stdout().lock().write_all(&bytes)?;
                Ok(())
            }
            Some(path) => {
                let res = File::create(path).and_then(|mut f| {
                    f.write_all(&bytes)?;
                    f.sync_all()
                });
                if res.is_err() {
                    let _ = fs::remove_file(path);
                }
                res.with_context(|| format!("writing {}", path.display()))
            }
        }
    }
}
