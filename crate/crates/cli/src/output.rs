//! Deterministic CSV and JSON emission with the resolved configuration
//! echoed into every output.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

/// RFC-4180-style quoting: fields containing commas, quotes, or newlines
/// are wrapped in double quotes with inner quotes doubled.
pub fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

/// A CSV table: config echo as leading comment rows, then a header row,
/// then data rows.
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self, echo: &BTreeMap<String, String>) -> String {
        let mut out = String::new();
        for (k, v) in echo {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(
            &self
                .header
                .iter()
                .map(|f| csv_field(f))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }
}

/// Wrap a JSON payload with the echoed configuration.
pub fn json_document(
    echo: &BTreeMap<String, String>,
    payload: serde_json::Value,
) -> serde_json::Value {
    let config: serde_json::Map<String, serde_json::Value> = echo
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
        .collect();
    serde_json::json!({ "config": config, "result": payload })
}

/// Write to the output path, or stdout when no path was given.
pub fn emit(out: Option<&Path>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            std::io::stdout()
                .write_all(content.as_bytes())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    }
}

/// Fixed-format float used in tables; shortest round-trip representation
/// keeps reruns byte-identical.
pub fn num(v: f64) -> String {
    format!("{v}")
}
