use std::io::{self, BufWriter, Write};

use serde::Serialize;
use serde_json::Value;

use crate::Format;

/// Single writer for all records of a command: JSON lines as they come, or
/// one aligned table at the end.
pub struct Output {
    format: Format,
    out: BufWriter<io::Stdout>,
    rows: Vec<Value>,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output { format, out: BufWriter::new(io::stdout()), rows: Vec::new() }
    }

    pub fn record<T: Serialize>(&mut self, value: &T) {
        let value = serde_json::to_value(value).expect("records serialize");
        match self.format {
            Format::Json => {
                let line = serde_json::to_string(&value).expect("values serialize");
                let _ = writeln!(self.out, "{line}");
            }
            Format::Table => self.rows.push(value),
        }
    }

    pub fn raw(&mut self, text: &str) {
        let _ = write!(self.out, "{text}");
    }

    pub fn finish(mut self) {
        if !self.rows.is_empty() {
            let table = render_table(&self.rows);
            let _ = write!(self.out, "{table}");
        }
        let _ = self.out.flush();
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render_table(rows: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(map) = row {
            for k in map.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| columns.iter().map(|c| row.get(c).map_or_else(|| "-".into(), cell)).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).max().unwrap_or(0).max(c.chars().count()))
        .collect();
    let mut s = String::new();
    let line = |fields: &[String], s: &mut String| {
        let padded: Vec<String> = fields
            .iter()
            .zip(&widths)
            .map(|(f, &w)| format!("{f}{}", " ".repeat(w - f.chars().count())))
            .collect();
        s.push_str(padded.join("  ").trim_end());
        s.push('\n');
    };
    line(&columns, &mut s);
    for r in &cells {
        line(r, &mut s);
    }
    s
}
