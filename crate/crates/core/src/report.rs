//! Tabular output: CSV with a `# schema:` line, or JSON with the same columns.
//!
//! Floats are written with 17 significant digits; NaN becomes an empty CSV
//! field or JSON `null`.

use std::fmt::Write as _;
use std::io::{self, Write};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Copy)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub command: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
}

pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        String::new()
    }
}

impl Table {
    /// `columns` as (name, unit) pairs.
    pub fn new(command: &str, columns: &[(&str, &str)]) -> Self {
        Table {
            command: command.to_string(),
            columns: columns
                .iter()
                .map(|(n, u)| Column { name: n.to_string(), unit: u.to_string() })
                .collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let schema: Vec<String> = self
            .columns
            .iter()
            .map(|c| if c.unit.is_empty() { c.name.clone() } else { format!("{} [{}]", c.name, c.unit) })
            .collect();
        writeln!(out, "# schema: {}: {}", self.command, schema.join(", ")).unwrap();
        let names: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        writeln!(out, "{}", names.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => float(*x),
                    Cell::Int(k) => k.to_string(),
                    Cell::Bool(b) => b.to_string(),
                    Cell::Text(s) => s.clone(),
                })
                .collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("string serialization");
        let mut out = String::new();
        write!(out, "{{\"command\":{},\"schema\":[", q(&self.command)).unwrap();
        for (k, c) in self.columns.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            write!(out, "{{\"name\":{},\"unit\":{}}}", q(&c.name), q(&c.unit)).unwrap();
        }
        out.push_str("],\"rows\":[");
        for (r, row) in self.rows.iter().enumerate() {
            out.push_str(if r > 0 { ",\n{" } else { "\n{" });
            for (k, (c, cell)) in self.columns.iter().zip(row).enumerate() {
                if k > 0 {
                    out.push(',');
                }
                let v = match cell {
                    Cell::Num(x) if x.is_finite() => float(*x),
                    Cell::Num(_) => "null".to_string(),
                    Cell::Int(i) => i.to_string(),
                    Cell::Bool(b) => b.to_string(),
                    Cell::Text(s) => q(s),
                };
                write!(out, "{}:{}", q(&c.name), v).unwrap();
            }
            out.push('}');
        }
        out.push_str("]}\n");
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn write_to<W: Write>(&self, format: Format, mut w: W) -> io::Result<()> {
        w.write_all(self.render(format).as_bytes())
    }
}
