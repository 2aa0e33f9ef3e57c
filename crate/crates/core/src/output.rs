//! Tabular results and their CSV / JSON serializations.
//!
//! Numbers are written with nine significant digits so identical inputs give
//! byte-identical files.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::config::OutputFormat;
use crate::error::{Error, Result};

/// Formats a value with nine significant digits.
pub fn fmt_sig9(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.8e}")
    } else if x.is_nan() {
        "nan".to_string()
    } else if x > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

pub fn fmt_degrees(x: f64) -> String {
    format!("{x:.6}")
}

/// Column-major friendly result table; the first column is `theta_deg`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// CSV text: `# key: value` metadata lines, a header row, then one row
    /// per θ. LF line endings.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::domain(format!("csv write: {e}"));
        w.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            let fields = row.iter().enumerate().map(|(j, &x)| {
                if j == 0 {
                    fmt_degrees(x)
                } else {
                    fmt_sig9(x)
                }
            });
            w.write_record(fields).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::domain(format!("csv write: {e}")))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is ascii"));
        Ok(out)
    }

    /// JSON text: `{"metadata": {...}, "columns": [...], "rows": [[...]]}`.
    /// Non-finite numbers are written as strings.
    pub fn to_json(&self) -> Result<String> {
        let metadata: Map<String, Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|&x| number(x)).collect()))
            .collect();
        let doc = json!({
            "metadata": metadata,
            "columns": self.columns,
            "rows": rows,
        });
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

/// JSON value for `x` rounded to nine significant digits.
pub(crate) fn number(x: f64) -> Value {
    if x.is_finite() {
        let rounded: f64 = fmt_sig9(x).parse().expect("formatted float parses");
        json!(rounded)
    } else {
        Value::String(fmt_sig9(x))
    }
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        Table {
            metadata: vec![("units".into(), "r0^4".into())],
            columns: vec!["theta_deg".into(), "ratio".into()],
            rows: vec![vec![89.98, 1713.042539], vec![90.000000000001, f64::INFINITY]],
        }
    }

    #[test]
    fn sig9_formatting() {
        assert_eq!(fmt_sig9(1713.0425391730241), "1.71304254e3");
        assert_eq!(fmt_sig9(0.0), "0.00000000e0");
        assert_eq!(fmt_sig9(f64::INFINITY), "inf");
        assert_eq!(fmt_degrees(80.10000000000001), "80.100000");
    }

    #[test]
    fn csv_layout() {
        let csv = sample().to_csv().unwrap();
        assert_eq!(
            csv,
            "# units: r0^4\ntheta_deg,ratio\n89.980000,1.71304254e3\n90.000000,inf\n"
        );
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&sample().to_json().unwrap()).unwrap();
        assert_eq!(v["columns"][1], "ratio");
        assert_eq!(v["rows"][0][1].as_f64().unwrap(), 1713.04254);
        assert_eq!(v["rows"][1][1], "inf");
        assert_eq!(v["metadata"]["units"], "r0^4");
    }
}
