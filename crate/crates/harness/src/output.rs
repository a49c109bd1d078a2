//! Run directories: numeric tables, snapshots and the manifest.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cli::Format;

/// A rectangular numeric table with named columns.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn header(&self) -> String {
        self.columns.join(",")
    }
}

/// 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

/// `snap_<t>` with `t` printed in shortest round-trip form.
pub fn snapshot_stem(t: f64) -> String {
    format!("snap_{t}")
}

pub fn write_table(dir: &Path, stem: &str, table: &Table, format: Format) -> Result<PathBuf> {
    match format {
        Format::Csv => {
            let path = dir.join(format!("{stem}.csv"));
            let mut w = csv::Writer::from_path(&path).with_context(|| format!("creating {}", path.display()))?;
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(|v| fmt_f64(*v)))?;
            }
            w.flush()?;
            Ok(path)
        }
        Format::Json => {
            let path = dir.join(format!("{stem}.json"));
            // NaN is not JSON; write null
            let rows: Vec<Vec<Value>> = table
                .rows
                .iter()
                .map(|r| r.iter().map(|v| if v.is_finite() { json!(v) } else { Value::Null }).collect())
                .collect();
            let doc = json!({ "columns": table.columns, "rows": rows });
            fs::write(&path, serde_json::to_vec_pretty(&doc)?)
                .with_context(|| format!("writing {}", path.display()))?;
            Ok(path)
        }
    }
}

/// Parses a CSV written by [`write_table`].
pub fn read_table(path: &Path) -> Result<Table> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let columns = r.headers()?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        rows.push(rec.iter().map(|s| s.parse::<f64>().unwrap_or(f64::NAN)).collect());
    }
    Ok(Table { columns, rows })
}

/// Per-run record written as `manifest.json`.
#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub command: String,
    pub config: Value,
    pub versions: Value,
    pub wall_time_s: f64,
    pub files: Vec<String>,
    pub diagnostics: Value,
}

impl Manifest {
    pub fn new(command: &str, config: impl Serialize) -> Self {
        Manifest {
            command: command.into(),
            config: serde_json::to_value(config).unwrap_or(Value::Null),
            versions: json!({
                "airy": env!("CARGO_PKG_VERSION"),
                "arch": std::env::consts::ARCH,
                "os": std::env::consts::OS,
            }),
            wall_time_s: 0.0,
            files: Vec::new(),
            diagnostics: json!({}),
        }
    }

    pub fn finish(&mut self, elapsed: Duration) {
        self.wall_time_s = elapsed.as_secs_f64();
    }

    pub fn add_file(&mut self, path: &Path) {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        self.files.push(name);
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        let path = dir.join("manifest.json");
        let mut f = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        f.write_all(&serde_json::to_vec_pretty(self)?)?;
        f.write_all(b"\n")?;
        Ok(())
    }
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

/// Renders a table for stdout.
pub fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = table.header();
            s.push('\n');
            for row in &table.rows {
                s.push_str(&row.iter().map(|v| fmt_f64(*v)).collect::<Vec<_>>().join(","));
                s.push('\n');
            }
            s
        }
        Format::Json => serde_json::to_string_pretty(table).unwrap_or_default(),
    }
}
