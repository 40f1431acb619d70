//! Writers for dump directories, manifests and JSON tables.

use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use oagraph_core::export::{Cell, TableDocument};
use oagraph_core::{EntityKind, GraphStore, SubsetManifest};

use crate::ingest::RELATION_DIR;
use crate::record::{entity_to_json, relation_to_json};

/// Adapts an [`io::Write`] to the `fmt::Write` sinks the core exporters use,
/// keeping the underlying I/O error.
pub struct IoSink<W: Write> {
    inner: W,
    error: Option<io::Error>,
}

impl<W: Write> IoSink<W> {
    pub fn new(inner: W) -> Self {
        IoSink { inner, error: None }
    }

    /// Runs an exporter against this sink and surfaces the first I/O error.
    pub fn run<E>(mut self, f: impl FnOnce(&mut Self) -> Result<(), E>) -> io::Result<W>
    where
        E: fmt::Display,
    {
        let result = f(&mut self);
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        result.map_err(|e| io::Error::other(e.to_string()))?;
        self.inner.flush()?;
        Ok(self.inner)
    }
}

impl<W: Write> fmt::Write for IoSink<W> {
    fn write_str(&mut self, s: &str) -> fmt::Result {
        self.inner.write_all(s.as_bytes()).map_err(|e| {
            self.error.get_or_insert(e);
            fmt::Error
        })
    }
}

fn json_cell(cell: &Cell) -> String {
    match cell {
        Cell::Str(s) => serde_json::Value::from(s.as_str()).to_string(),
        Cell::Int(n) => n.to_string(),
        Cell::Real(_) => cell.to_string(),
        Cell::Absent => "null".into(),
    }
}

/// Array of objects, one per row, keys in column order.
pub fn write_table_json<W: Write>(table: &TableDocument, mut w: W) -> io::Result<()> {
    if table.rows().is_empty() {
        return w.write_all(b"[]\n");
    }
    let keys: Vec<String> = table.columns().iter().map(|c| serde_json::Value::from(c.as_str()).to_string()).collect();
    w.write_all(b"[\n")?;
    for (i, row) in table.rows().iter().enumerate() {
        w.write_all(b"  {")?;
        for (j, (k, cell)) in keys.iter().zip(row).enumerate() {
            if j > 0 {
                w.write_all(b", ")?;
            }
            write!(w, "{k}: {}", json_cell(cell))?;
        }
        w.write_all(if i + 1 == table.rows().len() { b"}\n" } else { b"},\n" })?;
    }
    w.write_all(b"]\n")?;
    w.flush()
}

/// Writes `store` as a dump directory readable by ingest: one
/// `part-00000.json` per non-empty section, empty directories otherwise.
pub fn write_layout(store: &GraphStore, root: &Path) -> io::Result<()> {
    fs::create_dir_all(root)?;
    for kind in EntityKind::ALL {
        let dir = root.join(kind.dir_name());
        fs::create_dir_all(&dir)?;
        let mut entities = store.entities().filter(|e| e.kind() == kind).peekable();
        if entities.peek().is_none() {
            continue;
        }
        let mut w = BufWriter::new(fs::File::create(dir.join("part-00000.json"))?);
        for e in entities {
            writeln!(w, "{}", entity_to_json(&e))?;
        }
        w.flush()?;
    }
    let dir = root.join(RELATION_DIR);
    fs::create_dir_all(&dir)?;
    if !store.relations().is_empty() {
        let mut w = BufWriter::new(fs::File::create(dir.join("part-00000.json"))?);
        for r in store.relations() {
            writeln!(w, "{}", relation_to_json(r))?;
        }
        w.flush()?;
    }
    Ok(())
}

pub fn write_manifest(manifest: &SubsetManifest, path: &Path) -> io::Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    serde_json::to_writer_pretty(&mut w, manifest)?;
    w.write_all(b"\n")?;
    w.flush()
}
