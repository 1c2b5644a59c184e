//! Tables, JSON reports and the metadata sidecar written next to every output.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl Cell {
    /// 17 significant digits, enough to round-trip an `f64`.
    fn text(self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
        }
    }

    fn json(self) -> Value {
        match self {
            Cell::Int(v) => Value::from(v),
            Cell::Float(v) if v.is_finite() => Value::from(v),
            Cell::Float(v) => Value::from(v.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, w: W) -> io::Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.columns)?;
        for row in &self.rows {
            out.write_record(row.iter().map(|c| c.text()))?;
        }
        out.flush()
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::from(r.iter().map(|c| c.json()).collect::<Vec<_>>())).collect();
        serde_json::json!({ "columns": self.columns, "rows": rows })
    }
}

/// `path` with `suffix` appended to its file name: `zeros.csv` → `zeros.csv.meta.json`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    File::create(path).map(BufWriter::new).map_err(|e| CliError::io(path, e))
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| CliError::io(path, e.into()))?;
    w.write_all(b"\n").and_then(|_| w.flush()).map_err(|e| CliError::io(path, e))
}

#[derive(Debug, Serialize)]
struct Meta<'a> {
    tool: &'static str,
    version: &'static str,
    core_version: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    seed: u64,
    tolerances: BTreeMap<&'static str, f64>,
    outputs: Vec<String>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    extra: BTreeMap<String, Value>,
}

/// Where a command's results go, plus what to record about the run.
pub struct Sink<'a> {
    pub cfg: &'a RunConfig,
    pub command: &'a str,
    extra: BTreeMap<String, Value>,
    written: Vec<String>,
}

impl<'a> Sink<'a> {
    pub fn new(cfg: &'a RunConfig, command: &'a str) -> Self {
        Self { cfg, command, extra: BTreeMap::new(), written: Vec::new() }
    }

    /// Adds a key to the sidecar, e.g. the family actually used.
    pub fn record(&mut self, key: &str, value: impl Into<Value>) {
        self.extra.insert(key.to_string(), value.into());
    }

    /// Writes the main table to `--out` (stdout when absent).
    pub fn table(&mut self, table: &Table) -> Result<()> {
        match (&self.cfg.out, self.cfg.format()) {
            (Some(p), Format::Csv) => {
                let w = create(p)?;
                table.write_csv(w).map_err(|e| CliError::io(p, e))?;
                self.written.push(p.display().to_string());
            }
            (Some(p), Format::Json) => {
                write_json(p, &table.to_json())?;
                self.written.push(p.display().to_string());
            }
            (None, Format::Csv) => table.write_csv(io::stdout().lock()).map_err(|e| CliError::io("<stdout>", e))?,
            (None, Format::Json) => println!("{}", serde_json::to_string_pretty(&table.to_json()).unwrap_or_default()),
        }
        Ok(())
    }

    /// Writes `value` as the main output to `--out` (stdout when absent).
    pub fn json(&mut self, value: &Value) -> Result<()> {
        match &self.cfg.out {
            Some(p) => {
                write_json(p, value)?;
                self.written.push(p.display().to_string());
            }
            None => println!("{}", serde_json::to_string_pretty(value).unwrap_or_default()),
        }
        Ok(())
    }

    /// Writes a secondary JSON report next to `--out` (stderr when absent).
    pub fn report(&mut self, suffix: &str, value: &Value) -> Result<()> {
        match &self.cfg.out {
            Some(p) => {
                let path = sibling(p, suffix);
                write_json(&path, value)?;
                self.written.push(path.display().to_string());
            }
            None => eprintln!("{}", serde_json::to_string_pretty(value).unwrap_or_default()),
        }
        Ok(())
    }

    /// Writes `<out>.meta.json`; a no-op without `--out`.
    pub fn finish(self) -> Result<()> {
        let Some(p) = &self.cfg.out else { return Ok(()) };
        let tol = self.cfg.tolerances()?;
        let tolerances = zerodist_core::verify::Tolerances::KEYS
            .iter()
            .map(|&k| (k, tol.get(k).unwrap_or(f64::NAN)))
            .collect();
        let meta = Meta {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            core_version: zerodist_core::VERSION,
            command: self.command,
            config: self.cfg,
            seed: self.cfg.seed(),
            tolerances,
            outputs: self.written,
            extra: self.extra,
        };
        write_json(&sibling(p, ".meta.json"), &meta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_floats_round_trip() {
        let mut t = Table::new(&["k", "x"]);
        let x = 0.1f64 + 0.2;
        t.push(vec![3usize.into(), x.into()]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("k,x"));
        let row = lines.next().unwrap();
        let back: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn sibling_appends() {
        assert_eq!(sibling(Path::new("a/zeros.csv"), ".meta.json"), PathBuf::from("a/zeros.csv.meta.json"));
    }
}
