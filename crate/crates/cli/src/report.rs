//! Tabular results and their CSV / JSON renderings.

use rug::{Float, Integer};
use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};

#[derive(Debug, Clone)]
pub enum Cell {
    Int(Integer),
    /// high-precision real, already formatted
    Real(String),
    Small(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    pub fn real(x: &Float, sig: usize) -> Cell {
        Cell::Real(polypart::precision::fmt_float(x, sig))
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Real(s) | Cell::Text(s) => s.clone(),
            Cell::Small(x) => format!("{x:e}"),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        // integers beyond 2^53 lose digits as JSON numbers
        const SAFE: i64 = 1 << 53;
        match self {
            Cell::Int(i) => match i.to_i64() {
                Some(v) if v.abs() <= SAFE => json!(v),
                _ => json!(i.to_string()),
            },
            Cell::Real(s) | Cell::Text(s) => json!(s),
            Cell::Small(x) => json!(x),
            Cell::Bool(b) => json!(b),
        }
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(Integer::from(v))
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(Integer::from(v))
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Small(v)
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

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

impl Report {
    pub fn table(columns: Vec<&'static str>) -> Self {
        Report { columns, ..Default::default() }
    }

    pub fn row(&mut self, r: Vec<Cell>) {
        debug_assert_eq!(r.len(), self.columns.len());
        self.rows.push(r);
    }

    pub fn put(&mut self, key: impl Into<String>, v: impl Into<Cell>) {
        self.summary.push((key.into(), v.into()));
    }

    pub fn render(&self, command: &str, cfg: &RunConfig) -> String {
        match cfg.format {
            Format::Csv => self.csv(command, cfg),
            Format::Json => self.json(command, cfg),
        }
    }

    fn csv(&self, command: &str, cfg: &RunConfig) -> String {
        let mut out = String::new();
        // stripping "# " gives a config file that reproduces this output
        for line in cfg.to_toml(command).lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        if self.columns.is_empty() {
            out.push_str("key,value\n");
            for (k, v) in &self.summary {
                out.push_str(&format!("{k},{}\n", v.csv()));
            }
            return out;
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        for (k, v) in &self.summary {
            out.push_str(&format!("# summary {k} = {}\n", v.csv()));
        }
        out
    }

    fn json(&self, command: &str, cfg: &RunConfig) -> String {
        let mut result = Map::new();
        if !self.columns.is_empty() {
            let rows: Vec<Value> = self
                .rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().zip(r).map(|(c, v)| (c.to_string(), v.json())).collect()))
                .collect();
            result.insert("rows".into(), Value::Array(rows));
        }
        let summary: Map<String, Value> = self.summary.iter().map(|(k, v)| (k.clone(), v.json())).collect();
        result.insert("summary".into(), Value::Object(summary));
        let doc = json!({
            "command": command,
            "config": serde_json::to_value(cfg).expect("config serializes"),
            "result": Value::Object(result),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json serializes");
        s.push('\n');
        s
    }
}
