use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Rows for CSV output; only tabular commands carry one.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub passed: bool,
    pub result: Value,
    pub counterexample: Option<Value>,
    pub table: Option<Table>,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, params: Value) -> Self {
        Report {
            command: command.into(),
            params,
            passed: true,
            result: Value::Null,
            counterexample: None,
            table: None,
            lines: Vec::new(),
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "params": self.params,
            "passed": self.passed,
            "result": self.result,
        });
        if let Some(c) = &self.counterexample {
            v["counterexample"] = c.clone();
        }
        v
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.to_json())
                .map(|s| s + "\n")
                .map_err(|e| e.to_string()),
            Format::Csv => {
                let table = self
                    .table
                    .as_ref()
                    .ok_or_else(|| format!("`{}` has no tabular output; use --format json or text", self.command))?;
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&table.header).map_err(|e| e.to_string())?;
                for row in &table.rows {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
            Format::Text => {
                let mut out = String::new();
                for line in &self.lines {
                    out.push_str(line);
                    out.push('\n');
                }
                if let Some(c) = &self.counterexample {
                    out.push_str(&format!("counterexample: {c}\n"));
                }
                out.push_str(&format!("{}: {}\n", self.command, if self.passed { "PASS" } else { "FAIL" }));
                Ok(out)
            }
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
