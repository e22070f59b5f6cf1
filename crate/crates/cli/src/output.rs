use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

/// Rows of a tabular result with a fixed column order.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Lines printed after the text rendering; omitted from CSV.
    pub footer: Vec<String>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render_text(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.len()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: Vec<&str>| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = line(self.header.clone());
        for row in &self.rows {
            out += &line(row.iter().map(String::as_str).collect());
        }
        for note in &self.footer {
            out += note;
            out.push('\n');
        }
        out
    }

    pub fn render_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(io_error)?;
        for row in &self.rows {
            w.write_record(row).map_err(io_error)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }
}

fn io_error(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

pub fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Io(e.to_string()))
}

/// Emits `value` as JSON or `table` as text/CSV.
pub fn emit<T: Serialize>(format: Format, value: &T, table: impl FnOnce() -> Table) -> Result<(), CliError> {
    let text = match format {
        Format::Json => json(value)?,
        Format::Table => table().render_text(),
        Format::Csv => table().render_csv()?,
    };
    io::stdout()
        .lock()
        .write_all(text.as_bytes())
        .map_err(|e| CliError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_tuples() {
        let mut t = Table::new(vec!["m", "bound"]);
        t.push(vec!["(2,1,1)".into(), "3".into()]);
        assert_eq!(t.render_csv().unwrap(), "m,bound\n\"(2,1,1)\",3\n");
    }

    #[test]
    fn text_aligns_columns() {
        let mut t = Table::new(vec!["r", "threshold"]);
        t.push(vec!["10".into(), "3".into()]);
        assert_eq!(t.render_text(), "r   threshold\n10  3\n");
    }
}
