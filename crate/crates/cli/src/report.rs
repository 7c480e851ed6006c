//! Report emission: aligned tables for humans, RFC-4180 CSV and
//! JSON-lines for machines. Output is byte-identical across runs for the
//! same inputs.

use std::io::Write;

use roc_core::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    JsonLines,
}

/// One report: fixed headers, stringly cells for table/CSV, and a JSON
/// object per row for json-lines.
pub struct Report {
    headers: Vec<&'static str>,
    cells: Vec<Vec<String>>,
    json_rows: Vec<serde_json::Value>,
}

impl Report {
    pub fn new(headers: Vec<&'static str>) -> Self {
        Self {
            headers,
            cells: Vec::new(),
            json_rows: Vec::new(),
        }
    }

    pub fn push(&mut self, cells: Vec<String>, json: serde_json::Value) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.cells.push(cells);
        self.json_rows.push(json);
    }

    pub fn emit(&self, format: Format, out: &mut impl Write) -> Result<()> {
        match format {
            Format::Table => self.emit_table(out),
            Format::Csv => self.emit_csv(out),
            Format::JsonLines => self.emit_json_lines(out),
        }
    }

    fn emit_table(&self, out: &mut impl Write) -> Result<()> {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for row in &self.cells {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let write_row = |out: &mut dyn Write, cells: &[String]| -> std::io::Result<()> {
            let mut line = String::new();
            for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                if i + 1 < cells.len() {
                    line.extend(std::iter::repeat_n(' ', w - cell.chars().count()));
                }
            }
            writeln!(out, "{}", line.trim_end())
        };
        let headers: Vec<String> = self.headers.iter().map(|h| h.to_string()).collect();
        write_row(out, &headers)?;
        for row in &self.cells {
            write_row(out, row)?;
        }
        Ok(())
    }

    fn emit_csv(&self, out: &mut impl Write) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer
            .write_record(&self.headers)
            .map_err(|e| std::io::Error::other(e.to_string()))?;
        for row in &self.cells {
            writer
                .write_record(row)
                .map_err(|e| std::io::Error::other(e.to_string()))?;
        }
        writer.flush()?;
        Ok(())
    }

    fn emit_json_lines(&self, out: &mut impl Write) -> Result<()> {
        for row in &self.json_rows {
            writeln!(out, "{row}")?;
        }
        Ok(())
    }
}

/// Shortest-roundtrip float rendering (`Display` for `f64`), shared by all
/// formats so outputs stay comparable.
pub fn num(v: f64) -> String {
    format!("{v}")
}

pub fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Flattens `extra` object fields into `base`.
pub fn merge(mut base: serde_json::Value, extra: serde_json::Value) -> serde_json::Value {
    if let (Some(obj), Some(add)) = (base.as_object_mut(), extra.as_object()) {
        for (k, v) in add {
            obj.insert(k.clone(), v.clone());
        }
    }
    base
}
