//! Reports: a command echo, the normalized inputs, one record per check,
//! and run metadata. Numbers are exact strings throughout.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Vec<Value>,
    pub seed: u64,
    /// Every theorem-backed check in `results` held.
    pub ok: bool,
    /// Set by the conjecture check: whether both sides agreed everywhere.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjecture: Option<bool>,
    pub version: &'static str,
    /// Wall-clock time; the only field that varies between identical runs.
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: &str, inputs: Value, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            results: Vec::new(),
            seed,
            ok: true,
            conjecture: None,
            version: env!("CARGO_PKG_VERSION"),
            elapsed_ms: 0,
        }
    }

    /// Adds a record; `passed = false` marks the report as failing.
    pub fn push(&mut self, record: Value, passed: bool) {
        self.ok &= passed;
        self.results.push(record);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// The JSON form without `elapsed_ms`, for reproducibility checks.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if let Value::Object(m) = &mut v {
            m.remove("elapsed_ms");
        }
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }

    /// One line per record. Columns are the union of record keys in first
    /// appearance order; nested values are written as compact JSON.
    pub fn to_tsv(&self) -> String {
        let mut cols: Vec<String> = Vec::new();
        for r in &self.results {
            if let Value::Object(m) = r {
                for k in m.keys() {
                    if !cols.contains(k) {
                        cols.push(k.clone());
                    }
                }
            }
        }
        let mut out = cols.join("\t");
        out.push('\n');
        let empty = Map::new();
        for r in &self.results {
            let m = r.as_object().unwrap_or(&empty);
            let cells: Vec<String> = cols.iter().map(|c| m.get(c).map(cell).unwrap_or_default()).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Json => writeln!(out, "{}", self.to_json()),
            Format::Tsv => out.write_all(self.to_tsv().as_bytes()),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.replace(['\t', '\n'], " "),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tsv_columns_and_cells() {
        let mut r = Report::new("t", json!({}), 0);
        r.push(json!({"a": "1/2", "b": true}), true);
        r.push(json!({"a": "3/1", "c": ["x", "y"]}), false);
        assert!(!r.ok);
        assert_eq!(r.to_tsv(), "a\tb\tc\n1/2\ttrue\t\n3/1\t\t[\"x\",\"y\"]\n");
    }

    #[test]
    fn canonical_form_drops_timing() {
        let mut r = Report::new("t", json!({}), 3);
        r.elapsed_ms = 17;
        assert!(r.to_json().contains("elapsed_ms"));
        assert!(!r.canonical_json().contains("elapsed_ms"));
    }
}
