//! Reading and writing classification results.
//!
//! The text format is one record per polytope:
//!
//! ```text
//! # 1
//! 2 3
//! 0 1
//! 1 0
//! -1 -1
//! ```
//!
//! The `#` line carries the 1-based running index and is optional when
//! reading. The header gives the dimension `d` and the vertex count `n`,
//! followed by `n` lines of `d` integers, vertices in increasing point order.
//!
//! The structured format is JSON lines, one object per record with the
//! fields `index`, `dim`, `count` and `vertices`.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::FanoPolytope;
use crate::lattice::{LatticePoint, MAX_DIM};
use crate::order::PointSet;
use crate::sfp::Statistics;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

/// Writes `d n` followed by the vertices, without an index line.
pub fn write_polytope<W: Write>(p: &FanoPolytope, out: &mut W) -> io::Result<()> {
    write_vertices(p.vertices(), out)
}

fn write_vertices<W: Write>(v: &PointSet, out: &mut W) -> io::Result<()> {
    writeln!(out, "{} {}", v.dim().unwrap_or(0), v.len())?;
    for p in v {
        let mut first = true;
        for c in p.coords() {
            if !first {
                out.write_all(b" ")?;
            }
            write!(out, "{c}")?;
            first = false;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct JsonRecord {
    index: u64,
    dim: usize,
    count: usize,
    vertices: Vec<Vec<i64>>,
}

/// Streams records, numbering them from 1.
pub struct PolytopeWriter<W: Write> {
    out: W,
    format: Format,
    written: u64,
}

impl<W: Write> PolytopeWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        Self { out, format, written: 0 }
    }

    pub fn written(&self) -> u64 {
        self.written
    }

    pub fn write(&mut self, p: &FanoPolytope) -> io::Result<()> {
        self.write_vertices(p.vertices())
    }

    pub fn write_vertices(&mut self, v: &PointSet) -> io::Result<()> {
        self.written += 1;
        match self.format {
            Format::Text => {
                writeln!(self.out, "# {}", self.written)?;
                write_vertices(v, &mut self.out)
            }
            Format::Structured => {
                let rec = JsonRecord {
                    index: self.written,
                    dim: v.dim().unwrap_or(0),
                    count: v.len(),
                    vertices: v.iter().map(|p| p.coords().to_vec()).collect(),
                };
                serde_json::to_writer(&mut self.out, &rec)?;
                self.out.write_all(b"\n")
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// One record read back from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub index: Option<u64>,
    /// Vertices in file order, so that sortedness can be checked.
    pub vertices: Vec<LatticePoint>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn parse_ints(line: usize, s: &str) -> Result<Vec<i64>, ParseError> {
    s.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| syntax(line, format!("not an integer: {t:?}"))))
        .collect()
}

fn point(line: usize, coords: &[i64]) -> Result<LatticePoint, ParseError> {
    if coords.is_empty() || coords.len() > MAX_DIM {
        return Err(syntax(line, format!("unsupported dimension {}", coords.len())));
    }
    Ok(LatticePoint::new(coords))
}

/// Reads every record from either format; the format is detected per line.
pub fn read_records<R: BufRead>(input: R) -> Result<Vec<Record>, ParseError> {
    let mut records = Vec::new();
    let mut index = None;
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));
    while let Some((no, line)) = lines.next() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(rest) = t.strip_prefix('#') {
            index = rest.trim().parse().ok();
            continue;
        }
        if t.starts_with('{') {
            let rec: JsonRecord = serde_json::from_str(t).map_err(|e| syntax(no, e.to_string()))?;
            if rec.count != rec.vertices.len() {
                return Err(syntax(no, "count does not match vertex list"));
            }
            let vertices = rec
                .vertices
                .iter()
                .map(|c| {
                    if c.len() != rec.dim {
                        return Err(syntax(no, "vertex length does not match dim"));
                    }
                    point(no, c)
                })
                .collect::<Result<_, _>>()?;
            records.push(Record { index: Some(rec.index), vertices });
            continue;
        }
        let header = parse_ints(no, t)?;
        let [d, n] = header[..] else {
            return Err(syntax(no, "expected header `d n`"));
        };
        if d < 1 || d > MAX_DIM as i64 || n < 0 {
            return Err(syntax(no, "bad header"));
        }
        let mut vertices = Vec::with_capacity(n as usize);
        for _ in 0..n {
            let Some((no, line)) = lines.next() else {
                return Err(syntax(no, "truncated record"));
            };
            let coords = parse_ints(no, &line?)?;
            if coords.len() != d as usize {
                return Err(syntax(no, format!("expected {d} coordinates")));
            }
            vertices.push(point(no, &coords)?);
        }
        records.push(Record { index: index.take(), vertices });
    }
    Ok(records)
}

/// Renders the count of polytopes with `n` vertices (rows) per dimension
/// (columns), followed by a `Total` row. Zero cells are left blank.
pub fn write_table<W: Write>(stats: &[Statistics], out: &mut W) -> io::Result<()> {
    let mut header = vec!["n".to_string()];
    header.extend(stats.iter().map(|s| format!("d={}", s.dim)));
    let mut rows = vec![header];
    let ns: Vec<usize> = stats.iter().flat_map(|s| s.by_vertex_count.keys().copied()).collect();
    if let (Some(&lo), Some(&hi)) = (ns.iter().min(), ns.iter().max()) {
        for n in lo..=hi {
            let mut row = vec![n.to_string()];
            row.extend(stats.iter().map(|s| match s.by_vertex_count.get(&n) {
                Some(&c) if c > 0 => c.to_string(),
                _ => String::new(),
            }));
            rows.push(row);
        }
        let mut total = vec!["Total".to_string()];
        total.extend(stats.iter().map(|s| s.total.to_string()));
        rows.push(total);
    }
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    for row in &rows {
        let mut line = format!("{:<w$}", row[0], w = widths[0]);
        for (cell, w) in row.iter().zip(&widths).skip(1) {
            line.push_str(&format!("  {cell:>w$}"));
        }
        writeln!(out, "{}", line.trim_end())?;
    }
    Ok(())
}
