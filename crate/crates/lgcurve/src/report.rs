//! Versioned reports and their renderings.
//!
//! The machine format is pretty-printed JSON with sorted object keys:
//!
//! ```text
//! {
//!   "command": "jacobi",
//!   "input":   { "field": "QQ", "variables": [...], "weights": [...], "potential": "...", ... },
//!   "options": { ... },
//!   "schema":  "lgcurve-report",
//!   "summary": { ... },
//!   "tables":  [ { "name": "...", "columns": [...], "rows": [[...], ...] } ],
//!   "version": 1
//! }
//! ```
//!
//! Reports carry no timing or paths, so equal inputs give equal bytes.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "lgcurve-report";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub version: u32,
    pub command: String,
    pub input: BTreeMap<String, Value>,
    pub options: BTreeMap<String, Value>,
    pub summary: BTreeMap<String, Value>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn new(command: &str, input: BTreeMap<String, Value>) -> Self {
        Report {
            schema: SCHEMA,
            version: VERSION,
            command: command.to_string(),
            input,
            options: BTreeMap::new(),
            summary: BTreeMap::new(),
            tables: Vec::new(),
        }
    }

    pub fn option(&mut self, key: &str, value: impl Into<Value>) {
        self.options.insert(key.to_string(), value.into());
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_machine(&self) -> String {
        // serde_json maps are ordered, so the output is canonical
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lgcurve {} (report v{})", self.command, self.version);
        for (title, map) in [("input", &self.input), ("options", &self.options)] {
            if map.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{title}:");
            for (k, v) in map {
                let _ = writeln!(out, "  {k}: {}", plain(v));
            }
        }
        if !self.summary.is_empty() {
            out.push('\n');
            let width = self.summary.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, v) in &self.summary {
                let _ = writeln!(out, "{k:<width$}  {}", plain(v));
            }
        }
        for t in &self.tables {
            out.push('\n');
            out.push_str(&render_table(t));
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) => format!(
            "[{}]",
            items.iter().map(plain).collect::<Vec<_>>().join(", ")
        ),
        other => other.to_string(),
    }
}

fn render_table(t: &Table) -> String {
    let cells: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| r.iter().map(plain).collect())
        .collect();
    let widths: Vec<usize> = t
        .columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([c.len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |row: &[String]| -> String {
        let parts: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = format!("[{}]\n", t.name);
    out.push_str(&line(&t.columns));
    out.push('\n');
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out.push_str(&rule.join("  "));
    out.push('\n');
    for r in &cells {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}
