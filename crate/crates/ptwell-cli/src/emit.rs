//! Output formatting: CSV and JSON tables with round-trip-safe floats.
//!
//! Floats are printed with 17 significant digits (`{:.16e}`), which pins
//! the underlying double exactly: parse → format reproduces the emitted
//! text byte for byte. CSV uses a comma separator, one header row and LF
//! line endings, with metadata as leading `#`-comment lines; JSON is an
//! object `{"meta": {...}, "rows": [...]}` with self-describing row
//! objects.

use std::fmt::Write as _;

/// 17-significant-digit scientific form; round-trip safe for f64.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone)]
pub enum Value {
    Float(f64),
    Int(i64),
    Str(String),
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Float(v) => fmt_float(*v),
            Value::Int(v) => v.to_string(),
            Value::Str(s) => s.clone(),
        }
    }

    fn json(&self) -> String {
        match self {
            Value::Float(v) => {
                if v.is_finite() {
                    fmt_float(*v)
                } else {
                    // JSON has no infinities; encode as strings
                    format!("\"{v}\"")
                }
            }
            Value::Int(v) => v.to_string(),
            Value::Str(s) => json_escape(s),
        }
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(v as i64)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Str(v)
    }
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// A metadata-plus-rows table, the common shape of every subcommand output.
#[derive(Debug, Default)]
pub struct Table {
    meta: Vec<(String, Value)>,
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn row(&mut self, values: Vec<Value>) -> &mut Self {
        debug_assert_eq!(values.len(), self.columns.len());
        self.rows.push(values);
        self
    }

    pub fn render(&self, format: crate::Format, meta_time: bool) -> String {
        let mut meta: Vec<(String, Value)> = self.meta.clone();
        if meta_time {
            let since_epoch = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            meta.push(("generated_unix".to_string(), Value::Int(since_epoch as i64)));
        }
        match format {
            crate::Format::Csv => self.render_csv(&meta),
            crate::Format::Json => self.render_json(&meta),
        }
    }

    fn render_csv(&self, meta: &[(String, Value)]) -> String {
        let mut out = String::new();
        for (k, v) in meta {
            let _ = writeln!(out, "# {k} = {}", v.csv());
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    fn render_json(&self, meta: &[(String, Value)]) -> String {
        let mut out = String::from("{\n  \"meta\": {");
        for (i, (k, v)) in meta.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "\n    {}: {}", json_escape(k), v.json());
        }
        out.push_str("\n  },\n  \"rows\": [");
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n    {");
            for (j, (col, v)) in self.columns.iter().zip(row.iter()).enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "{}: {}", json_escape(col), v.json());
            }
            out.push('}');
        }
        out.push_str("\n  ]\n}\n");
        out
    }
}
