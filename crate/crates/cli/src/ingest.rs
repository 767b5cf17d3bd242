//! Knot-table files: a JSON array of rows or a CSV with an `id,pd` header
//! and optional `genus` and `two_bridge` (`p/q`) columns.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::value::RawValue;
use suturekit::table::TableRow;

/// A problem with one row, located by 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowIssue {
    pub line: usize,
    pub id: Option<String>,
    pub message: String,
}

impl fmt::Display for RowIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.id {
            Some(id) => write!(f, "line {} (row {id}): {}", self.line, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

/// Rows that are structurally sound, plus issues for the rest. PD codes
/// are not validated here.
#[derive(Debug, Default)]
pub struct Ingested {
    pub rows: Vec<TableRow>,
    /// Line of each entry of `rows`.
    pub lines: Vec<usize>,
    pub issues: Vec<RowIssue>,
}

#[derive(Deserialize)]
struct CsvRow {
    id: String,
    pd: String,
    #[serde(default)]
    genus: Option<u32>,
    #[serde(default)]
    two_bridge: Option<String>,
}

fn parse_two_bridge(s: &str) -> Result<(u64, u64)> {
    let (p, q) = s.split_once('/').context("two_bridge must look like p/q")?;
    Ok((p.trim().parse()?, q.trim().parse()?))
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset].bytes().filter(|&b| b == b'\n').count() + 1
}

fn ingest_json(text: &str) -> Result<Vec<(usize, Result<TableRow, String>)>> {
    let raw: Vec<&RawValue> = serde_json::from_str(text).context("table is not a JSON array")?;
    Ok(raw
        .into_iter()
        .map(|r| {
            let offset = r.get().as_ptr() as usize - text.as_ptr() as usize;
            let row = serde_json::from_str::<TableRow>(r.get()).map_err(|e| e.to_string());
            (line_of(text, offset), row)
        })
        .collect())
}

fn ingest_csv(text: &str) -> Result<Vec<(usize, Result<TableRow, String>)>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let headers = reader.headers().context("CSV table needs a header row")?.clone();
    let mut out = Vec::new();
    for record in reader.records() {
        let (line, row) = match record {
            Ok(rec) => {
                let line = rec.position().map_or(0, |p| p.line() as usize);
                let row = rec
                    .deserialize::<CsvRow>(Some(&headers))
                    .map_err(|e| e.to_string())
                    .and_then(|r| {
                        let two_bridge = match r.two_bridge.as_deref() {
                            None | Some("") => None,
                            Some(s) => Some(parse_two_bridge(s).map_err(|e| e.to_string())?),
                        };
                        Ok(TableRow { id: r.id, pd: r.pd, genus: r.genus, two_bridge })
                    });
                (line, row)
            }
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line() as usize);
                (line, Err(e.to_string()))
            }
        };
        out.push((line, row));
    }
    Ok(out)
}

fn collect(parsed: Vec<(usize, Result<TableRow, String>)>) -> Ingested {
    let mut out = Ingested::default();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (line, row) in parsed {
        match row {
            Err(message) => out.issues.push(RowIssue { line, id: None, message }),
            Ok(row) if row.id.trim().is_empty() => out.issues.push(RowIssue {
                line,
                id: None,
                message: "empty id".into(),
            }),
            Ok(row) => {
                if let Some(first) = seen.get(&row.id) {
                    out.issues.push(RowIssue {
                        line,
                        id: Some(row.id.clone()),
                        message: format!("duplicate id, first defined on line {first}"),
                    });
                } else {
                    seen.insert(row.id.clone(), line);
                    out.rows.push(row);
                    out.lines.push(line);
                }
            }
        }
    }
    out
}

/// Reads a table, keeping sound rows and recording row-level issues.
pub fn ingest_table_lenient(path: &Path) -> Result<Ingested> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read table {}", path.display()))?;
    ingest_text(&text, path.extension().and_then(|e| e.to_str()))
}

/// `extension` picks the format; JSON is assumed when the text starts
/// with `[`.
pub fn ingest_text(text: &str, extension: Option<&str>) -> Result<Ingested> {
    let is_json = match extension {
        Some(e) if e.eq_ignore_ascii_case("csv") => false,
        Some(e) if e.eq_ignore_ascii_case("json") => true,
        _ => text.trim_start().starts_with('['),
    };
    let parsed = if is_json { ingest_json(text)? } else { ingest_csv(text)? };
    Ok(collect(parsed))
}

/// Strict ingestion: every row must be sound and carry a valid PD code.
pub fn ingest_table(path: &Path) -> Result<Vec<TableRow>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read table {}", path.display()))?;
    ingest_table_text(&text, path.extension().and_then(|e| e.to_str()))
}

pub fn ingest_table_text(text: &str, extension: Option<&str>) -> Result<Vec<TableRow>> {
    let ingested = ingest_text(text, extension)?;
    let mut issues = ingested.issues;
    for (row, &line) in ingested.rows.iter().zip(&ingested.lines) {
        if let Err(e) = row.diagram() {
            issues.push(RowIssue {
                line,
                id: Some(row.id.clone()),
                message: format!("bad PD code: {e}"),
            });
        }
    }
    if !issues.is_empty() {
        issues.sort_by_key(|i| i.line);
        let listing: Vec<String> = issues.iter().map(ToString::to_string).collect();
        bail!("table has {} bad row(s):\n  {}", issues.len(), listing.join("\n  "));
    }
    Ok(ingested.rows)
}
