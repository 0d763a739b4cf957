//! Tabular results with pass/fail checks, rendered as CSV or JSON.

use std::io::Write;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

/// A cell of a CSV row.
pub fn cell(v: impl Into<Value>) -> Value {
    v.into()
}

/// Floats that JSON cannot hold (NaN, infinities) are kept as strings.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(|| Value::String(x.to_string()), Value::Number)
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn row(&mut self, values: Vec<Value>) {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for r in &self.rows {
            let line: Vec<String> = r
                .iter()
                .map(|v| match v {
                    Value::String(s) if s.contains(',') => format!("\"{s}\""),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, w: W) -> std::io::Result<()> {
        let rows: Vec<Map<String, Value>> = self
            .rows
            .iter()
            .map(|r| {
                self.columns
                    .iter()
                    .cloned()
                    .zip(r.iter().cloned())
                    .collect()
            })
            .collect();
        let doc = serde_json::json!({
            "command": self.command,
            "rows": rows,
            "checks": self.checks,
            "notes": self.notes,
            "passed": self.passed(),
        });
        serde_json::to_writer_pretty(w, &doc)?;
        Ok(())
    }

    /// Check and note lines for the terminal.
    pub fn write_summary<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for n in &self.notes {
            writeln!(w, "note: {n}")?;
        }
        for c in &self.checks {
            writeln!(
                w,
                "{} {}: {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        Ok(())
    }
}
