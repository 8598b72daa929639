use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

/// Rows of string cells rendered either as an aligned text table or as CSV.
pub struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
    footnotes: Vec<String>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Self {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            footnotes: Vec::new(),
        }
    }

    pub fn row<S: Into<String>>(&mut self, cells: impl IntoIterator<Item = S>) {
        self.rows.push(cells.into_iter().map(Into::into).collect());
    }

    /// Printed under the text table only.
    pub fn footnote(&mut self, text: impl Into<String>) {
        self.footnotes.push(text.into());
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i < widths.len() {
                    widths[i] = widths[i].max(cell.chars().count());
                } else {
                    widths.push(cell.chars().count());
                }
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i > 0 {
                    s.push_str(" | ");
                }
                let pad = widths[i] - cell.chars().count();
                s.push_str(cell);
                if i + 1 < cells.len() {
                    s.extend(std::iter::repeat(' ').take(pad));
                }
            }
            s.push('\n');
            s
        };
        let mut out = line(&self.headers);
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        out.push_str(&line(&rule).replace(" | ", "-+-"));
        for row in &self.rows {
            out.push_str(&line(row));
        }
        for note in &self.footnotes {
            let _ = writeln!(out, "\n{note}");
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Full-precision decimal used in CSV and JSON-adjacent cells.
pub fn num(v: f64) -> String {
    format!("{v}")
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends output quietly.
pub fn stdout(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_table_aligns_columns() {
        let mut t = Table::new(["a", "value"]);
        t.row(["long name", "1"]);
        t.footnote("note");
        assert_eq!(
            t.to_text(),
            "a         | value\n----------+------\nlong name | 1\n\nnote\n"
        );
    }

    #[test]
    fn csv_quotes_commas_and_skips_footnotes() {
        let mut t = Table::new(["kind", "detail"]);
        t.row(["range", "(r0, S4, [C6, C0])"]);
        t.footnote("not in csv");
        assert_eq!(t.to_csv().unwrap(), "kind,detail\nrange,\"(r0, S4, [C6, C0])\"\n");
    }

    #[test]
    fn numbers_keep_full_precision() {
        assert_eq!(num(36.37122987569251), "36.37122987569251");
        assert_eq!(num(200.0), "200");
    }
}
