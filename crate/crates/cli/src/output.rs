//! Buffered output in either human or line-delimited JSON form. Nothing is
//! written until the command has finished, so input errors leave stdout
//! empty.

use std::fmt::Write as _;

use clap::ValueEnum;
use pcube::rational::{to_display, to_fraction};
use pcube::Rational;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    JsonLines,
}

pub struct Output {
    format: Format,
    buf: String,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Self {
            format,
            buf: String::new(),
        }
    }

    pub fn is_human(&self) -> bool {
        self.format == Format::Human
    }

    /// `a/b`, with a decimal approximation in human output.
    pub fn rational(&self, r: &Rational) -> String {
        match self.format {
            Format::Human => to_display(r),
            Format::JsonLines => to_fraction(r),
        }
    }

    /// A human line; dropped in JSON mode.
    pub fn line(&mut self, text: impl AsRef<str>) {
        if self.is_human() {
            self.buf.push_str(text.as_ref());
            self.buf.push('\n');
        }
    }

    /// A JSON record tagged with `kind`; dropped in human mode.
    pub fn record(&mut self, kind: &str, body: impl Serialize) {
        if self.is_human() {
            return;
        }
        let mut map = Map::new();
        map.insert("record".into(), json!(kind));
        match serde_json::to_value(body).expect("report types serialize") {
            Value::Object(fields) => map.extend(fields),
            other => {
                map.insert("value".into(), other);
            }
        }
        writeln!(self.buf, "{}", Value::Object(map)).expect("writing to a String");
    }

    pub fn into_string(self) -> String {
        self.buf
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let render = |cells: Vec<&str>| {
        let line: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        line.join("  ").trim_end().to_string()
    };
    let mut out = render(header.to_vec());
    for row in rows {
        out.push('\n');
        out.push_str(&render(row.iter().map(String::as_str).collect()));
    }
    out
}
