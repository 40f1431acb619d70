//! Streaming ingest of a dump directory into a [`GraphStore`].
//!
//! Layout: one subdirectory per entity kind (`publication`, `dataset`,
//! `software`, `otherresearchproduct`, `datasource`, `organization`,
//! `project`, `community`) plus `relation`, each holding `*.json` or
//! `*.json.gz` files with one JSON object per line. Gzip is chosen by file
//! extension.
//!
//! Files are parsed by a pool of workers that stream batches of records to a
//! single writer. Only one line buffer per worker and a bounded number of
//! in-flight batches exist at any time, so memory tracks the store, not the
//! input. Duplicate ids are resolved by `(file, line)` rank, which makes the
//! result independent of scheduling.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc::sync_channel;
use std::thread;

use flate2::read::MultiGzDecoder;
use log::warn;
use oagraph_core::{Entity, EntityKind, GraphStore, Inserted, Relation};
use serde::Serialize;

use crate::error::IngestError;
use crate::record::{parse_entity_record, parse_relation_record, Rejection};

pub const RELATION_DIR: &str = "relation";
const BATCH_LINES: usize = 4096;

/// What a dump subdirectory holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Entities(EntityKind),
    Relations,
}

impl Section {
    pub fn dir_name(self) -> &'static str {
        match self {
            Section::Entities(k) => k.dir_name(),
            Section::Relations => RELATION_DIR,
        }
    }

    pub fn from_dir_name(name: &str) -> Option<Self> {
        if name == RELATION_DIR {
            Some(Section::Relations)
        } else {
            EntityKind::from_dir_name(name).map(Section::Entities)
        }
    }
}

#[derive(Debug, Clone)]
pub struct DumpLayout {
    root: PathBuf,
}

/// A data file scheduled for ingest.
#[derive(Debug, Clone)]
pub struct DumpFile {
    pub section: Section,
    pub path: PathBuf,
    /// Path relative to the layout root, with `/` separators.
    pub name: String,
}

impl DumpLayout {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        DumpLayout { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Data files in a fixed order (by section directory, then file name),
    /// plus warnings for anything skipped.
    pub fn scan(&self) -> Result<(Vec<DumpFile>, Vec<String>), IngestError> {
        let root_err = |source| IngestError::Root { path: self.root.clone(), source };
        let mut warnings = Vec::new();
        let mut dirs: Vec<(String, PathBuf)> = Vec::new();
        for entry in std::fs::read_dir(&self.root).map_err(root_err)? {
            let entry = entry.map_err(root_err)?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if entry.path().is_dir() {
                dirs.push((name, entry.path()));
            } else {
                warnings.push(format!("ignoring file `{name}` at dump root"));
            }
        }
        dirs.sort();
        let mut files = Vec::new();
        for (dir_name, dir) in dirs {
            let Some(section) = Section::from_dir_name(&dir_name) else {
                warnings.push(format!("ignoring unknown subdirectory `{dir_name}`"));
                continue;
            };
            let mut names = Vec::new();
            match std::fs::read_dir(&dir) {
                Ok(entries) => {
                    for entry in entries.flatten() {
                        let name = entry.file_name().to_string_lossy().into_owned();
                        if entry.path().is_file() && (name.ends_with(".json") || name.ends_with(".json.gz")) {
                            names.push(name);
                        } else {
                            warnings.push(format!("ignoring `{dir_name}/{name}`"));
                        }
                    }
                }
                Err(e) => warnings.push(format!("cannot list `{dir_name}`: {e}")),
            }
            names.sort();
            files.extend(names.into_iter().map(|n| DumpFile {
                section,
                path: dir.join(&n),
                name: format!("{dir_name}/{n}"),
            }));
        }
        Ok((files, warnings))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct KindCounts {
    pub read: u64,
    pub accepted: u64,
    pub rejected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RejectedLine {
    pub file: String,
    pub line: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileFailure {
    pub file: String,
    pub error: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IngestReport {
    /// Keyed by section directory name.
    pub kinds: BTreeMap<String, KindCounts>,
    pub rejections: Vec<RejectedLine>,
    /// Ids seen more than once; the last occurrence in file order was kept.
    pub duplicate_ids: Vec<String>,
    /// Relations with an endpoint that is not an ingested entity. They are
    /// kept in the store.
    pub dangling_relations: u64,
    pub file_errors: Vec<FileFailure>,
    pub warnings: Vec<String>,
}

impl IngestReport {
    fn new() -> Self {
        let mut kinds = BTreeMap::new();
        for k in EntityKind::ALL {
            kinds.insert(k.dir_name().to_string(), KindCounts::default());
        }
        kinds.insert(RELATION_DIR.to_string(), KindCounts::default());
        IngestReport { kinds, ..Default::default() }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IngestOptions {
    pub threads: usize,
}

impl Default for IngestOptions {
    fn default() -> Self {
        IngestOptions { threads: thread::available_parallelism().map_or(1, |n| n.get()) }
    }
}

enum Parsed {
    Entity(Entity),
    Relation(Relation),
}

enum Message {
    Batch { file: usize, lines: Vec<(u64, Result<Parsed, Rejection>)> },
    Failed { file: usize, error: io::Error },
}

fn open(path: &Path) -> io::Result<Box<dyn BufRead>> {
    let f = File::open(path)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let reader: Box<dyn Read> = if name.ends_with(".gz") { Box::new(MultiGzDecoder::new(f)) } else { Box::new(f) };
    Ok(Box::new(BufReader::with_capacity(256 * 1024, reader)))
}

fn parse_line(section: Section, bytes: &[u8]) -> Result<Parsed, Rejection> {
    let line = std::str::from_utf8(bytes).map_err(|_| Rejection::InvalidUtf8)?;
    match section {
        Section::Entities(kind) => parse_entity_record(kind, line).map(Parsed::Entity),
        Section::Relations => parse_relation_record(line).map(Parsed::Relation),
    }
}

/// Streams one file to `emit` in batches. Blank lines are skipped.
fn read_file(file: &DumpFile, mut emit: impl FnMut(Vec<(u64, Result<Parsed, Rejection>)>)) -> io::Result<()> {
    let mut reader = open(&file.path)?;
    let mut buf = Vec::new();
    let mut batch = Vec::with_capacity(BATCH_LINES);
    let mut line_no = 0u64;
    loop {
        buf.clear();
        let n = match reader.read_until(b'\n', &mut buf) {
            Ok(n) => n,
            Err(e) => {
                if !batch.is_empty() {
                    emit(std::mem::take(&mut batch));
                }
                return Err(e);
            }
        };
        if n == 0 {
            break;
        }
        line_no += 1;
        let trimmed = buf.trim_ascii();
        if trimmed.is_empty() {
            continue;
        }
        batch.push((line_no, parse_line(file.section, trimmed)));
        if batch.len() == BATCH_LINES {
            emit(std::mem::replace(&mut batch, Vec::with_capacity(BATCH_LINES)));
        }
    }
    if !batch.is_empty() {
        emit(batch);
    }
    Ok(())
}

/// Reads every file of `layout` into a store.
///
/// Per-file read errors and rejected lines go to the report; only failing to
/// list the root directory is an error.
pub fn build_store(layout: &DumpLayout, options: IngestOptions) -> Result<(GraphStore, IngestReport), IngestError> {
    let (files, warnings) = layout.scan()?;
    let mut report = IngestReport::new();
    report.warnings = warnings;
    let mut builder = GraphStore::builder();
    let mut duplicates = std::collections::BTreeSet::new();

    let workers = options.threads.clamp(1, files.len().max(1));
    let next = AtomicUsize::new(0);
    let (tx, rx) = sync_channel::<Message>(workers * 2);

    thread::scope(|scope| {
        for _ in 0..workers {
            let tx = tx.clone();
            let files = &files;
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(file) = files.get(i) else { break };
                let result = read_file(file, |lines| {
                    let _ = tx.send(Message::Batch { file: i, lines });
                });
                if let Err(error) = result {
                    let _ = tx.send(Message::Failed { file: i, error });
                }
            });
        }
        drop(tx);

        for msg in rx {
            match msg {
                Message::Batch { file, lines } => {
                    let f = &files[file];
                    let counts = report.kinds.get_mut(f.section.dir_name()).expect("section registered");
                    for (line, parsed) in lines {
                        counts.read += 1;
                        match parsed {
                            Ok(Parsed::Entity(e)) => {
                                counts.accepted += 1;
                                let id = e.id().as_str().to_string();
                                let rank = ((file as u64) << 40) | line;
                                if !matches!(builder.insert_ranked(rank, e), Inserted::New) {
                                    duplicates.insert(id);
                                }
                            }
                            Ok(Parsed::Relation(r)) => {
                                counts.accepted += 1;
                                builder.push_relation(r);
                            }
                            Err(reason) => {
                                counts.rejected += 1;
                                report.rejections.push(RejectedLine { file: f.name.clone(), line, reason: reason.to_string() });
                            }
                        }
                    }
                }
                Message::Failed { file, error } => {
                    report.file_errors.push(FileFailure { file: files[file].name.clone(), error: error.to_string() });
                }
            }
        }
    });

    let store = builder.build();
    report.rejections.sort_by(|a, b| (&a.file, a.line).cmp(&(&b.file, b.line)));
    report.file_errors.sort_by(|a, b| a.file.cmp(&b.file));
    report.duplicate_ids = duplicates.into_iter().collect();
    report.dangling_relations = store.dangling_relations() as u64;
    if !report.duplicate_ids.is_empty() {
        report.warnings.push(format!("{} ids occur more than once; the last occurrence was kept", report.duplicate_ids.len()));
    }
    if report.dangling_relations > 0 {
        report.warnings.push(format!("{} relations reference ids absent from the dump", report.dangling_relations));
    }
    for w in &report.warnings {
        warn!("{w}");
    }
    for f in &report.file_errors {
        warn!("failed reading {}: {}", f.file, f.error);
    }
    Ok((store, report))
}
