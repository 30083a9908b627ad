//! Tables written as CSV or as `{meta: {command, params}, data: [...]}` JSON.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64 as C;
use serde_json::{json, Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
    Complex(C),
}

pub struct Table {
    pub command: String,
    pub params: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

pub fn complex(z: C) -> Value {
    json!({ "re": z.re, "im": z.im })
}

impl Table {
    pub fn new(command: &str, params: Map<String, Value>, columns: Vec<&'static str>) -> Self {
        Self {
            command: command.to_owned(),
            params,
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut header = Vec::new();
        let first = self.rows.first();
        for (k, name) in self.columns.iter().enumerate() {
            match first.map(|r| &r[k]) {
                Some(Cell::Complex(_)) if *name == "value" => {
                    header.extend(["re".to_owned(), "im".to_owned()])
                }
                Some(Cell::Complex(_)) => {
                    header.extend([format!("{name}_re"), format!("{name}_im")])
                }
                _ => header.push((*name).to_owned()),
            }
        }
        let mut out = header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Real(v) => format!("{v:.16e}"),
                    Cell::Int(v) => v.to_string(),
                    Cell::Text(s) => s.clone(),
                    Cell::Complex(z) => format!("{:.16e},{:.16e}", z.re, z.im),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let data: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, c) in self.columns.iter().zip(row) {
                    let v = match c {
                        Cell::Real(v) => json!(v),
                        Cell::Int(v) => json!(v),
                        Cell::Text(s) => json!(s),
                        Cell::Complex(z) => complex(*z),
                    };
                    obj.insert((*name).to_owned(), v);
                }
                Value::Object(obj)
            })
            .collect();
        json!({ "meta": { "command": self.command, "params": self.params }, "data": data })
    }
}

/// Renders the document; JSON documents may carry extra `meta` entries.
pub fn render(
    table: &Table,
    format: Format,
    extra_meta: Option<Map<String, Value>>,
) -> Result<String, CliError> {
    match format {
        Format::Csv => Ok(table.to_csv()),
        Format::Json => {
            let mut doc = table.to_json();
            if let Some(extra) = extra_meta {
                let meta = doc["meta"].as_object_mut().expect("meta is an object");
                meta.extend(extra);
            }
            let mut s =
                serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
