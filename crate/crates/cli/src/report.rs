//! Tabular reports rendered as an aligned table, CSV or versioned JSON.

use std::fmt::Write as _;

use clap::ValueEnum;
use num_bigint::BigUint;
use serde_json::{json, Map, Value};

use dr_entropy::numeric::fmt_sig;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(BigUint),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Float(x) => fmt_sig(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => match u64::try_from(n) {
                Ok(v) => json!(v),
                Err(_) => json!(n.to_string()),
            },
            // round-trip through the 12-digit text so json and csv agree
            Cell::Float(x) if x.is_finite() => json!(fmt_sig(*x).parse::<f64>().expect("fmt_sig output parses")),
            Cell::Float(x) => json!(fmt_sig(*x)),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(BigUint::from(n))
    }
}

impl From<BigUint> for Cell {
    fn from(n: BigUint) -> Self {
        Cell::Int(n)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
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

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(o: Option<T>) -> Self {
        o.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub params: Vec<(String, Cell)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
    pub ok: bool,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            params: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
            ok: true,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Cell>) {
        self.params.push((key.to_string(), value.into()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_string(), value.into()));
    }

    /// `column=value` pairs of one row.
    pub fn row_text(&self, row: &[Cell]) -> String {
        let pairs: Vec<String> = self.columns.iter().zip(row).map(|(k, v)| format!("{k}={}", v.text())).collect();
        pairs.join(" ")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.table(),
            Format::Csv => self.csv(),
            Format::Json => self.json(),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", v.text())).collect();
        let _ = writeln!(out, "# {} {}", self.command, params.join(" "));
        let body: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| body.iter().map(|r| r[j].chars().count()).chain([self.columns[j].chars().count()]).max().unwrap_or(0))
            .collect();
        // text columns flush left, numbers flush right
        let left: Vec<bool> =
            (0..self.columns.len()).map(|j| self.rows.iter().any(|r| matches!(r[j], Cell::Text(_)))).collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .zip(&left)
                .map(|((c, &w), &l)| if l { format!("{c:<w$}") } else { format!("{c:>w$}") })
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let _ = writeln!(out, "{}", line(&self.columns));
        for r in &body {
            let _ = writeln!(out, "{}", line(r));
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "{k}: {}", v.text());
        }
        let _ = writeln!(out, "status: {}", if self.ok { "ok" } else { "failed" });
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::text)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    fn json(&self) -> String {
        let obj = |pairs: &[(String, Cell)]| -> Map<String, Value> {
            pairs.iter().map(|(k, v)| (k.clone(), v.json())).collect()
        };
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Object(self.columns.iter().cloned().zip(r.iter().map(Cell::json)).collect()))
            .collect();
        let doc = json!({
            "schema": SCHEMA,
            "command": self.command,
            "params": obj(&self.params),
            "columns": self.columns,
            "rows": rows,
            "summary": obj(&self.summary),
            "ok": self.ok,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", &["n", "h"]);
        r.param("graph", "rose:3");
        r.row(vec![1usize.into(), 3f64.ln().into()]);
        r.row(vec![2usize.into(), Cell::Empty]);
        r.note("estimate", 1.0f64 / 3.0);
        r
    }

    #[test]
    fn csv_has_twelve_digits() {
        assert_eq!(sample().render(Format::Csv), "n,h\n1,1.09861228867\n2,\n");
    }

    #[test]
    fn json_is_versioned() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["rows"][0]["h"], 1.09861228867);
        assert_eq!(v["rows"][1]["h"], Value::Null);
        assert_eq!(v["summary"]["estimate"], 0.333333333333);
    }

    #[test]
    fn big_counts_stay_exact() {
        let big = BigUint::from(3u32).pow(60);
        assert_eq!(Cell::Int(big.clone()).json(), json!(big.to_string()));
        assert_eq!(Cell::Int(BigUint::from(7u32)).json(), json!(7));
    }

    #[test]
    fn table_aligns_columns() {
        let t = sample().render(Format::Table);
        assert!(t.starts_with("# demo graph=rose:3\n"));
        assert!(t.contains("\nn              h\n"));
        assert!(t.ends_with("estimate: 0.333333333333\nstatus: ok\n"));
    }
}
