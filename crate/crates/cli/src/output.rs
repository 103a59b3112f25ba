//! Plain, JSON and CSV rendering. Rationals are always strings.

use serde_json::{Map, Value};

use crate::args::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Plain,
    Json,
    Csv,
}

impl From<Format> for Mode {
    fn from(f: Format) -> Self {
        if f.json {
            Mode::Json
        } else if f.csv {
            Mode::Csv
        } else {
            Mode::Plain
        }
    }
}

/// Rows under a fixed header; `None` cells are empty (CSV, plain) or null
/// (JSON).
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Option<String>>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Option<String>>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, mode: Mode) -> String {
        let mut out = String::new();
        match mode {
            Mode::Json => {
                for row in &self.rows {
                    let obj: Map<String, Value> = self
                        .header
                        .iter()
                        .zip(row)
                        .map(|(h, v)| (h.to_string(), v.clone().map_or(Value::Null, Value::String)))
                        .collect();
                    out.push_str(&Value::Object(obj).to_string());
                    out.push('\n');
                }
            }
            Mode::Csv => {
                out.push_str(&self.header.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|c| csv_cell(c.as_deref().unwrap_or(""))).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            Mode::Plain => {
                let width: Vec<usize> = (0..self.header.len())
                    .map(|i| {
                        self.rows
                            .iter()
                            .map(|r| r[i].as_deref().unwrap_or("-").chars().count())
                            .chain([self.header[i].len()])
                            .max()
                            .unwrap_or(0)
                    })
                    .collect();
                let line = |cells: Vec<&str>| {
                    let padded: Vec<String> = cells
                        .iter()
                        .zip(&width)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                out.push_str(&line(self.header.clone()));
                for row in &self.rows {
                    out.push_str(&line(row.iter().map(|c| c.as_deref().unwrap_or("-")).collect()));
                }
            }
        }
        out
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
