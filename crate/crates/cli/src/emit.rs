use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::Format;

/// A rectangular result with its parameters and run diagnostics.
///
/// Cells hold already rounded decimal strings so both formats print the
/// same digits.
#[derive(Debug, Default)]
pub struct Report {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub params: Vec<(&'static str, String)>,
    pub diagnostics: Vec<(&'static str, String)>,
    pub summary: String,
}

impl Report {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()
    }

    fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let data = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .map(|c| c.to_string())
                        .zip(row.iter().map(|s| cell(s)))
                        .collect(),
                )
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("params".into(), pairs(&self.params));
        doc.insert("data".into(), Value::Array(data));
        doc.insert("diagnostics".into(), pairs(&self.diagnostics));
        serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
        writeln!(out)
    }

    /// Data to `path` plus the summary on stdout, or data alone on stdout.
    pub fn deliver(&self, format: Format, path: Option<&Path>) -> io::Result<()> {
        match path {
            Some(path) => {
                let mut file = io::BufWriter::new(File::create(path)?);
                self.write(format, &mut file)?;
                file.flush()?;
                println!("{}", self.summary);
                println!("wrote {} rows to {}", self.rows.len(), path.display());
                Ok(())
            }
            None => {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                self.write(format, &mut lock)
            }
        }
    }
}

fn pairs(items: &[(&'static str, String)]) -> Value {
    Value::Object(items.iter().map(|(k, v)| (k.to_string(), cell(v))).collect())
}

// numbers keep their printed digits; anything else stays a string
fn cell(text: &str) -> Value {
    match Number::from_str(text) {
        Ok(n) => Value::Number(n),
        Err(_) => Value::String(text.to_owned()),
    }
}
