//! CSV tables with `#` comment headers, as written by the command line tool.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "NaN".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:?}")
    }
}

/// A header row, data rows, and the `#` comment lines that preceded them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    /// Comment lines without the leading `# `.
    pub comments: Vec<String>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Self {
            comments: Vec::new(),
            header: header.iter().map(|h| h.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.comments.push(line.into());
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn push_f64(&mut self, row: &[f64]) {
        self.rows.push(row.iter().map(|&v| fmt_f64(v)).collect());
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Parses a column as floats.
    pub fn column_f64(&self, name: &str) -> Result<Vec<f64>> {
        let idx = self
            .column_index(name)
            .ok_or_else(|| Error::InvalidParameter(format!("missing column `{name}`")))?;
        self.rows.iter().map(|row| parse_f64(&row[idx])).collect()
    }

    /// Value of a `key=value` comment line.
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|line| {
            let (k, v) = line.split_once('=')?;
            (k.trim() == key).then(|| v.trim())
        })
    }

    pub fn render(&self) -> Result<String> {
        let mut out = Vec::new();
        self.write_to(&mut out)?;
        String::from_utf8(out).map_err(|e| Error::InvalidParameter(e.to_string()))
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        for line in &self.comments {
            writeln!(out, "# {line}")?;
        }
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer.flush()?;
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut comments = Vec::new();
        let mut body_start = 0;
        for line in text.split_inclusive('\n') {
            match line.strip_prefix('#') {
                Some(rest) => {
                    comments.push(rest.trim_end_matches(['\r', '\n']).trim_start().to_string());
                    body_start += line.len();
                }
                None => break,
            }
        }
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .has_headers(true)
            .from_reader(&text.as_bytes()[body_start..]);
        let header = reader.headers()?.iter().map(str::to_string).collect();
        let rows = reader
            .records()
            .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<std::result::Result<Vec<Vec<String>>, _>>()?;
        Ok(Self {
            comments,
            header,
            rows,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }
}

pub fn parse_f64(text: &str) -> Result<f64> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| Error::InvalidParameter(format!("`{text}` is not a number")))
}

/// Reads an `n,value` sequence file.
pub fn read_sequence(path: &Path) -> Result<Vec<(usize, f64)>> {
    let table = Table::read(path)?;
    if table.header.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "{} needs columns n,value",
            path.display()
        )));
    }
    table
        .rows
        .iter()
        .map(|row| {
            let n = row[0]
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad index `{}`", row[0])))?;
            Ok((n, parse_f64(&row[1])?))
        })
        .collect()
}

/// Writes `values[k]` as row `first_index + k` of an `n,value` file.
pub fn sequence_table(values: &[f64], first_index: usize) -> Table {
    let mut table = Table::new(&["n", "value"]);
    for (k, &v) in values.iter().enumerate() {
        table.push(vec![(first_index + k).to_string(), fmt_f64(v)]);
    }
    table
}
