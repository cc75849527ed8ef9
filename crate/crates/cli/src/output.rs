//! Command results and their json, csv and text renderings.

use gsp4_core::exactnum::{format_rational, CyclotomicInt, LinPoly, Rational};
use gsp4_core::Weight;
use serde_json::{json, Value};

use crate::config::Format;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table { headers: headers.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }
}

/// What a subcommand produced. `verified = false` maps to exit code 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Value,
    pub table: Table,
    pub verified: bool,
}

impl Output {
    pub fn new(json: Value, table: Table) -> Self {
        Output { json, table, verified: true }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.headers).expect("in-memory write");
                for row in &self.table.rows {
                    w.write_record(row).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8 input")
            }
            Format::Text => render_text(&self.table),
        }
    }
}

fn render_text(t: &Table) -> String {
    let mut widths: Vec<usize> = t.headers.iter().map(|h| h.chars().count()).collect();
    for row in &t.rows {
        for (i, cell) in row.iter().enumerate() {
            if i < widths.len() {
                widths[i] = widths[i].max(cell.chars().count());
            }
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> =
            cells.iter().enumerate().map(|(i, c)| format!("{c:<w$}", w = widths.get(i).copied().unwrap_or(0))).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = line(&t.headers);
    out.push('\n');
    for row in &t.rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

pub fn rational(x: &Rational) -> String {
    format_rational(x)
}

pub fn linpoly(x: &LinPoly) -> String {
    x.to_string()
}

pub fn weight_str(w: &Weight) -> String {
    w.to_string()
}

pub fn weight_json(w: &Weight) -> Value {
    json!([linpoly(&w.a), linpoly(&w.b), linpoly(&w.c)])
}

/// A rational coefficient as "num/den", anything else in the power basis.
pub fn cyclotomic(x: &CyclotomicInt) -> String {
    match x.as_rational() {
        Some(r) => rational(r),
        None => x.to_string(),
    }
}

pub fn cyclotomic_json(x: &CyclotomicInt) -> Value {
    match x.as_rational() {
        Some(r) => json!(rational(r)),
        None => json!({
            "order": x.order(),
            "coords": x.coords().iter().map(rational).collect::<Vec<_>>(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use gsp4_core::exactnum::{int, rat};

    fn sample() -> Output {
        let mut t = Table::new(["name", "value"]);
        t.push(["a", "1/2"]);
        t.push(["b, c", "r1 - r2"]);
        Output::new(json!({"a": "1/2"}), t)
    }

    #[test]
    fn renderings() {
        let o = sample();
        assert_eq!(o.render(Format::Csv), "name,value\na,1/2\n\"b, c\",r1 - r2\n");
        assert_eq!(o.render(Format::Text), "name  value\na     1/2\nb, c  r1 - r2\n");
        assert_eq!(o.render(Format::Json), "{\n  \"a\": \"1/2\"\n}\n");
    }

    #[test]
    fn scalars() {
        assert_eq!(rational(&rat(-6, 4)), "-3/2");
        assert_eq!(rational(&int(5)), "5/1");
        assert_eq!(linpoly(&LinPoly::parse("2 - r2 + r1").unwrap()), "r1 - r2 + 2");
    }
}
