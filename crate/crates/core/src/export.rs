//! Text serializers for query tables and country networks.
//!
//! Everything writes into a [`core::fmt::Write`] sink so output is
//! byte-identical for equal input: CSV per RFC 4180 with LF endings, a TSV
//! edge list, Pajek `.net`, and GraphML. Network vertices are numbered in
//! lexicographic order of country code.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use crate::error::Error;
use crate::metrics::{
    countries, normalize_weights, AccessBreakdownRow, AccessCounts, CitationCount, CoParticipationEdge, OrgYear,
};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Str(String),
    Int(u64),
    Real(f64),
    Absent,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Str(s) => f.write_str(s),
            Cell::Int(n) => write!(f, "{n}"),
            Cell::Real(x) => write_real(f, *x),
            Cell::Absent => Ok(()),
        }
    }
}

impl From<Option<String>> for Cell {
    fn from(v: Option<String>) -> Self {
        v.map_or(Cell::Absent, Cell::Str)
    }
}

/// Fixed six fractional digits with trailing zeros trimmed, keeping at least
/// one digit after the point: `1.0`, `0.5`, `0.333333`.
pub fn write_real<W: Write>(out: &mut W, x: f64) -> fmt::Result {
    let mut buf = String::new();
    write!(buf, "{x:.6}")?;
    if buf.contains('.') {
        let keep = buf.trim_end_matches('0').len();
        buf.truncate(keep);
        if buf.ends_with('.') {
            buf.push('0');
        }
    }
    out.write_str(&buf)
}

/// Column names plus rows of equal width.
#[derive(Debug, Clone, PartialEq)]
pub struct TableDocument {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl TableDocument {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        TableDocument { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<(), Error> {
        if row.len() != self.columns.len() {
            return Err(Error::RowWidth { row: self.rows.len(), expected: self.columns.len(), found: row.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    /// Keeps the first `n` rows.
    pub fn truncate(&mut self, n: usize) {
        self.rows.truncate(n);
    }

    fn push(&mut self, row: Vec<Cell>) {
        self.push_row(row).expect("row built to match columns");
    }
}

fn csv_field<W: Write>(out: &mut W, s: &str) -> fmt::Result {
    if s.contains([',', '"', '\n', '\r']) {
        out.write_char('"')?;
        for part in s.split_inclusive('"') {
            out.write_str(part)?;
            if part.ends_with('"') {
                out.write_char('"')?;
            }
        }
        out.write_char('"')
    } else {
        out.write_str(s)
    }
}

pub fn write_csv<W: Write>(table: &TableDocument, out: &mut W) -> Result<(), Error> {
    for (i, c) in table.columns.iter().enumerate() {
        if i > 0 {
            out.write_char(',')?;
        }
        csv_field(out, c)?;
    }
    out.write_char('\n')?;
    let mut cell_buf = String::new();
    for row in &table.rows {
        for (i, cell) in row.iter().enumerate() {
            if i > 0 {
                out.write_char(',')?;
            }
            cell_buf.clear();
            write!(cell_buf, "{cell}")?;
            csv_field(out, &cell_buf)?;
        }
        out.write_char('\n')?;
    }
    Ok(())
}

fn edge_weights(edges: &[CoParticipationEdge], normalized: bool) -> Vec<Cell> {
    match normalize_weights(edges) {
        Ok(n) if normalized => n.into_iter().map(|e| Cell::Real(e.normalized)).collect(),
        _ => edges.iter().map(|e| Cell::Int(e.weight)).collect(),
    }
}

/// Tab-separated `left, right, weight` with an optional `normalized_weight`
/// column.
pub fn write_edge_list<W: Write>(edges: &[CoParticipationEdge], normalized: bool, out: &mut W) -> Result<(), Error> {
    out.write_str("left\tright\tweight")?;
    if normalized {
        out.write_str("\tnormalized_weight")?;
    }
    out.write_char('\n')?;
    let norm = edge_weights(edges, true);
    for (e, n) in edges.iter().zip(norm) {
        write!(out, "{}\t{}\t{}", e.left, e.right, e.weight)?;
        if normalized {
            write!(out, "\t{n}")?;
        }
        out.write_char('\n')?;
    }
    Ok(())
}

/// Pajek network with 1-based vertex ids and quoted labels. With
/// `normalized`, edge weights are the normalized reals.
pub fn write_pajek<W: Write>(edges: &[CoParticipationEdge], normalized: bool, out: &mut W) -> Result<(), Error> {
    let vertices: Vec<&str> = countries(edges).into_iter().collect();
    let index = |c: &str| vertices.binary_search(&c).expect("edge endpoint is a vertex") + 1;
    writeln!(out, "*Vertices {}", vertices.len())?;
    for (i, v) in vertices.iter().enumerate() {
        writeln!(out, "{} \"{}\"", i + 1, v.replace('"', "'"))?;
    }
    out.write_str("*Edges\n")?;
    for (e, w) in edges.iter().zip(edge_weights(edges, normalized)) {
        writeln!(out, "{} {} {}", index(&e.left), index(&e.right), w)?;
    }
    Ok(())
}

fn xml_escape<W: Write>(out: &mut W, s: &str) -> fmt::Result {
    for ch in s.chars() {
        match ch {
            '&' => out.write_str("&amp;")?,
            '<' => out.write_str("&lt;")?,
            '>' => out.write_str("&gt;")?,
            '"' => out.write_str("&quot;")?,
            '\'' => out.write_str("&apos;")?,
            c => out.write_char(c)?,
        }
    }
    Ok(())
}

/// Undirected GraphML with a `label` node attribute and a real-valued
/// `weight` edge attribute.
pub fn write_graphml<W: Write>(edges: &[CoParticipationEdge], normalized: bool, out: &mut W) -> Result<(), Error> {
    let vertices: Vec<&str> = countries(edges).into_iter().collect();
    let index = |c: &str| vertices.binary_search(&c).expect("edge endpoint is a vertex");
    out.write_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n")?;
    out.write_str("<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n")?;
    out.write_str("  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n")?;
    out.write_str("  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n")?;
    out.write_str("  <graph id=\"G\" edgedefault=\"undirected\">\n")?;
    for (i, v) in vertices.iter().enumerate() {
        write!(out, "    <node id=\"n{i}\"><data key=\"label\">")?;
        xml_escape(out, v)?;
        out.write_str("</data></node>\n")?;
    }
    for (i, (e, w)) in edges.iter().zip(edge_weights(edges, normalized)).enumerate() {
        let w = match w {
            Cell::Int(n) => Cell::Real(n as f64),
            other => other,
        };
        writeln!(
            out,
            "    <edge id=\"e{i}\" source=\"n{}\" target=\"n{}\"><data key=\"weight\">{w}</data></edge>",
            index(&e.left),
            index(&e.right)
        )?;
    }
    out.write_str("  </graph>\n</graphml>\n")?;
    Ok(())
}

const ACCESS_COLUMNS: [&str; 5] = ["total", "open", "embargo", "closed", "other"];

fn access_cells(c: &AccessCounts) -> [Cell; 5] {
    [Cell::Int(c.total), Cell::Int(c.open), Cell::Int(c.embargo), Cell::Int(c.closed), Cell::Int(c.other)]
}

pub fn citation_table(rows: &[CitationCount]) -> TableDocument {
    let mut t = TableDocument::new(["id", "pid", "count"]);
    for r in rows {
        t.push(alloc::vec![
            Cell::Str(r.product_id.as_str().into()),
            r.canonical_pid.as_ref().map(|p| String::from(p.value())).into(),
            Cell::Int(r.count),
        ]);
    }
    t
}

pub fn country_table(rows: &[AccessBreakdownRow<String>]) -> TableDocument {
    let mut t = TableDocument::new(core::iter::once("country").chain(ACCESS_COLUMNS));
    for r in rows {
        let mut row = alloc::vec![Cell::Str(r.key.clone())];
        row.extend(access_cells(&r.counts));
        t.push(row);
    }
    t
}

pub fn org_year_table(rows: &[AccessBreakdownRow<OrgYear>]) -> TableDocument {
    let mut t = TableDocument::new(["organization", "pub_year"].into_iter().chain(ACCESS_COLUMNS));
    for r in rows {
        let mut row = alloc::vec![
            r.key.organization.clone().into(),
            r.key.year.map_or(Cell::Absent, |y| Cell::Int(y.into())),
        ];
        row.extend(access_cells(&r.counts));
        t.push(row);
    }
    t
}

pub fn edge_table(edges: &[CoParticipationEdge]) -> TableDocument {
    let mut t = TableDocument::new(["left", "right", "weight"]);
    for e in edges {
        t.push(alloc::vec![Cell::Str(e.left.clone()), Cell::Str(e.right.clone()), Cell::Int(e.weight)]);
    }
    t
}
