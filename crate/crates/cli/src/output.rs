use std::fs;
use std::io::{self, Write};
use std::path::Path;

use num_bigint::BigInt;
use serde::Serialize;

use crate::Format;

/// One `n(a, b, s)` entry.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Row {
    pub a: u32,
    pub b: u32,
    pub s: u32,
    pub count: BigInt,
}

#[derive(Serialize)]
struct JsonRow {
    a: u32,
    b: u32,
    s: u32,
    count: String,
}

pub fn render(rows: &[Row], format: Format) -> io::Result<String> {
    match format {
        Format::Json => {
            let json: Vec<JsonRow> = rows
                .iter()
                .map(|r| JsonRow {
                    a: r.a,
                    b: r.b,
                    s: r.s,
                    count: r.count.to_string(),
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&json)?;
            text.push('\n');
            Ok(text)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["a", "b", "s", "count"])?;
            for r in rows {
                w.write_record([
                    r.a.to_string(),
                    r.b.to_string(),
                    r.s.to_string(),
                    r.count.to_string(),
                ])?;
            }
            let bytes = w.into_inner().map_err(|e| e.into_error())?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Text => {
            let width = rows
                .iter()
                .map(|r| r.count.to_string().len())
                .max()
                .unwrap_or(0)
                .max(5);
            let mut text = format!("{:>4} {:>4} {:>4} {:>width$}\n", "a", "b", "s", "count");
            for r in rows {
                text.push_str(&format!(
                    "{:>4} {:>4} {:>4} {:>width$}\n",
                    r.a,
                    r.b,
                    r.s,
                    r.count.to_string()
                ));
            }
            Ok(text)
        }
    }
}

pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(path) => fs::write(path, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}
