//! Report assembly and emission.
//!
//! JSON reports are a single object with `config`, `results`, and
//! `diagnostics` keys; all maps are ordered, so identical configurations
//! produce byte-identical output. CSV output is the command's data table:
//! a header row then data rows, energies with 12 significant digits,
//! RFC-style quoting, LF newlines.

use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Write;

pub struct Report {
    pub config: BTreeMap<String, Value>,
    pub results: Value,
    pub diagnostics: BTreeMap<String, Value>,
    pub table: Table,
}

pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// 12 significant digits in scientific notation.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Report {
    pub fn to_json(&self) -> Value {
        json!({
            "config": self.config,
            "results": self.results,
            "diagnostics": self.diagnostics,
        })
    }

    pub fn write_json(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(&self.to_json())?;
        out.write_all(text.as_bytes())?;
        out.write_all(b"\n")
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let mut line = self.table.header.join(",");
        line.push('\n');
        out.write_all(line.as_bytes())?;
        for row in &self.table.rows {
            let encoded: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
            let mut line = encoded.join(",");
            line.push('\n');
            out.write_all(line.as_bytes())?;
        }
        Ok(())
    }
}
