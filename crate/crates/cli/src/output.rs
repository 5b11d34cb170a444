//! Tables and their CSV / JSON encodings.
//!
//! Every file starts with metadata (command, parameters, seed, version,
//! certificates). In CSV these are `#` lines, and the wall-clock timestamp
//! sits alone on the last of them so data rows diff cleanly.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Str(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Str(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Str(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Str(v.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small or
/// very large magnitudes.
pub fn fmt_float(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = v.abs();
    if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Clone, Default)]
pub struct Metadata {
    pub command: String,
    pub argv: Vec<String>,
    pub parameters: Vec<(String, String)>,
    pub seed: u64,
    pub certificates: Vec<(String, String)>,
}

impl Metadata {
    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.parameters.push((key.to_string(), value.to_string()));
    }

    pub fn cert(&mut self, key: &str, value: impl ToString) {
        self.certificates.push((key.to_string(), value.to_string()));
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

fn timestamp() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

fn pairs(list: &[(String, String)]) -> String {
    list.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn write_csv<W: Write>(mut out: W, meta: &Metadata, table: &Table) -> std::io::Result<()> {
    writeln!(out, "# lmeasure {} command={}", env!("CARGO_PKG_VERSION"), meta.command)?;
    writeln!(out, "# argv: {}", meta.argv.join(" "))?;
    writeln!(out, "# parameters: {}", pairs(&meta.parameters))?;
    writeln!(out, "# seed={}", meta.seed)?;
    writeln!(out, "# certificates: {}", pairs(&meta.certificates))?;
    writeln!(out, "# timestamp={}", timestamp())?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(table.columns).map_err(unwrap_io)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::csv)).map_err(unwrap_io)?;
    }
    w.flush()
}

/// Keep the original IO error (and its kind) when the CSV layer fails.
fn unwrap_io(e: csv::Error) -> std::io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io,
        other => std::io::Error::other(format!("{other:?}")),
    }
}

pub fn to_json(meta: &Metadata, table: &Table) -> Value {
    let kv = |list: &[(String, String)]| {
        Value::Object(list.iter().map(|(k, v)| (k.clone(), Value::from(v.as_str()))).collect())
    };
    let mut m = Map::new();
    m.insert("command".into(), Value::from(meta.command.as_str()));
    m.insert("version".into(), Value::from(env!("CARGO_PKG_VERSION")));
    m.insert("argv".into(), Value::from(meta.argv.clone()));
    m.insert("parameters".into(), kv(&meta.parameters));
    m.insert("seed".into(), Value::from(meta.seed));
    m.insert("certificates".into(), kv(&meta.certificates));
    m.insert("timestamp".into(), Value::from(timestamp()));
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            Value::Object(
                table.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect(),
            )
        })
        .collect();
    serde_json::json!({
        "metadata": Value::Object(m),
        "columns": table.columns,
        "rows": rows,
    })
}

pub fn write_json<W: Write>(mut out: W, meta: &Metadata, table: &Table) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, &to_json(meta, table))?;
    writeln!(out)
}
