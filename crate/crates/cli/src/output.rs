//! Rendering of command results as aligned tables, CSV or versioned JSON.

use std::io::{self, Write};

use serde_json::{Map, Value};

use quadrica::json::SCHEMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

pub struct Emitter {
    pub format: Format,
    pub quiet: bool,
}

/// Tabular data with a JSON rendering of the whole result.
pub struct Rendered {
    pub title: Option<String>,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub notes: Vec<String>,
    pub json: Value,
}

impl Rendered {
    pub fn new(headers: Vec<&'static str>, json: Value) -> Self {
        Self { title: None, headers, rows: Vec::new(), notes: Vec::new(), json }
    }

    pub fn title(mut self, title: impl Into<String>) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }
}

/// Prepends the schema tag to an object payload.
pub fn with_schema(payload: Value) -> Value {
    let mut map = Map::new();
    map.insert("schema".into(), Value::String(SCHEMA.into()));
    match payload {
        Value::Object(fields) => map.extend(fields),
        other => {
            map.insert("result".into(), other);
        }
    }
    Value::Object(map)
}

impl Emitter {
    pub fn emit(&self, r: &Rendered) -> io::Result<()> {
        if self.quiet {
            return Ok(());
        }
        let stdout = io::stdout();
        let mut out = stdout.lock();
        match self.format {
            Format::Json => writeln!(out, "{}", with_schema(r.json.clone())),
            Format::Csv => write_csv(&mut out, &r.headers, &r.rows),
            Format::Table => write_table(&mut out, r),
        }
    }

    /// One JSON document per line.
    pub fn emit_lines(&self, docs: &[Value]) -> io::Result<()> {
        if self.quiet {
            return Ok(());
        }
        let stdout = io::stdout();
        let mut out = stdout.lock();
        for d in docs {
            writeln!(out, "{}", with_schema(d.clone()))?;
        }
        Ok(())
    }
}

fn write_csv(out: &mut impl Write, headers: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(headers)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()
}

fn write_table(out: &mut impl Write, r: &Rendered) -> io::Result<()> {
    if let Some(t) = &r.title {
        writeln!(out, "{t}")?;
    }
    if !r.headers.is_empty() {
        let mut widths: Vec<usize> = r.headers.iter().map(|h| h.len()).collect();
        for row in &r.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let headers: Vec<String> = r.headers.iter().map(|h| h.to_string()).collect();
        writeln!(out, "{}", line(&headers))?;
        writeln!(out, "{}", widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "))?;
        for row in &r.rows {
            writeln!(out, "{}", line(row))?;
        }
    }
    for n in &r.notes {
        writeln!(out, "{n}")?;
    }
    Ok(())
}
