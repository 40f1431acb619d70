//! Versioned binary store file.
//!
//! ```text
//! magic   "OAGSTORE"
//! version u8
//! strings u32 count, then (u32 len, utf-8 bytes)*
//! products, organizations, projects, datasources, communities, relations:
//!         u32 count, then fixed-layout records of u32 string indexes
//! ```
//!
//! All integers are little-endian. `u32::MAX` marks an absent optional
//! string. Every distinct string is stored once, so relation records are
//! three table indexes each.

use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::Arc;

use oagraph_core::{
    AccessRight, Date, Entity, EntityId, NamedEntity, Organization, Pid, ProductKind, RelName, Relation,
    ResearchProduct, GraphStore,
};

use crate::error::StoreFileError;

pub const MAGIC: &[u8; 8] = b"OAGSTORE";
pub const VERSION: u8 = 1;
const ABSENT: u32 = u32::MAX;

#[derive(Default)]
struct StringTable<'a> {
    index: HashMap<&'a str, u32>,
    strings: Vec<&'a str>,
}

impl<'a> StringTable<'a> {
    fn add(&mut self, s: &'a str) {
        if !self.index.contains_key(s) {
            self.index.insert(s, self.strings.len() as u32);
            self.strings.push(s);
        }
    }

    fn add_opt(&mut self, s: Option<&'a str>) {
        if let Some(s) = s {
            self.add(s);
        }
    }

    fn get(&self, s: &str) -> u32 {
        self.index[s]
    }

    fn get_opt(&self, s: Option<&str>) -> u32 {
        s.map_or(ABSENT, |s| self.get(s))
    }
}

fn kind_code(k: ProductKind) -> u8 {
    match k {
        ProductKind::Publication => 0,
        ProductKind::Dataset => 1,
        ProductKind::Software => 2,
        ProductKind::Other => 3,
    }
}

struct Out<W: Write>(W);

impl<W: Write> Out<W> {
    fn u8(&mut self, v: u8) -> io::Result<()> {
        self.0.write_all(&[v])
    }
    fn u16(&mut self, v: u16) -> io::Result<()> {
        self.0.write_all(&v.to_le_bytes())
    }
    fn u32(&mut self, v: u32) -> io::Result<()> {
        self.0.write_all(&v.to_le_bytes())
    }
    fn len(&mut self, n: usize) -> io::Result<()> {
        let n = u32::try_from(n).map_err(|_| io::Error::other("section too large for store format"))?;
        self.u32(n)
    }
}

pub fn write_store<W: Write>(store: &GraphStore, w: W) -> io::Result<()> {
    let mut t = StringTable::default();
    for p in store.products() {
        t.add(p.id.as_str());
        for x in &p.pids {
            t.add(x.scheme());
            t.add(x.value());
        }
        t.add_opt(p.best_access_right.as_ref().map(|a| a.label.as_str()));
        t.add_opt(p.title.as_deref());
    }
    for o in store.organizations() {
        t.add(o.id.as_str());
        t.add_opt(o.legal_name.as_deref());
        t.add_opt(o.legal_short_name.as_deref());
        t.add_opt(o.country_code.as_deref());
    }
    for e in store.projects().chain(store.datasources()).chain(store.communities()) {
        t.add(e.id.as_str());
        t.add_opt(e.name.as_deref());
    }
    for r in store.relations() {
        t.add(r.source.as_str());
        t.add(r.target.as_str());
        t.add(r.name.as_str());
    }

    let mut out = Out(w);
    out.0.write_all(MAGIC)?;
    out.u8(VERSION)?;
    out.len(t.strings.len())?;
    for s in &t.strings {
        out.len(s.len())?;
        out.0.write_all(s.as_bytes())?;
    }

    out.len(store.products().count())?;
    for p in store.products() {
        out.u32(t.get(p.id.as_str()))?;
        out.u8(kind_code(p.kind))?;
        out.len(p.pids.len())?;
        for x in &p.pids {
            out.u32(t.get(x.scheme()))?;
            out.u32(t.get(x.value()))?;
        }
        match p.publication_date {
            Some(d) => {
                out.u8(1)?;
                out.u16(d.year())?;
                out.u8(d.month())?;
                out.u8(d.day())?;
            }
            None => out.u8(0)?,
        }
        out.u32(t.get_opt(p.best_access_right.as_ref().map(|a| a.label.as_str())))?;
        out.u32(t.get_opt(p.title.as_deref()))?;
    }

    out.len(store.organizations().count())?;
    for o in store.organizations() {
        out.u32(t.get(o.id.as_str()))?;
        out.u32(t.get_opt(o.legal_name.as_deref()))?;
        out.u32(t.get_opt(o.legal_short_name.as_deref()))?;
        out.u32(t.get_opt(o.country_code.as_deref()))?;
    }

    for section in [
        store.projects().collect::<Vec<_>>(),
        store.datasources().collect(),
        store.communities().collect(),
    ] {
        out.len(section.len())?;
        for e in section {
            out.u32(t.get(e.id.as_str()))?;
            out.u32(t.get_opt(e.name.as_deref()))?;
        }
    }

    out.len(store.relations().len())?;
    for r in store.relations() {
        out.u32(t.get(r.source.as_str()))?;
        out.u32(t.get(r.target.as_str()))?;
        out.u32(t.get(r.name.as_str()))?;
    }
    out.0.flush()
}

struct In<R: Read> {
    r: R,
    strings: Vec<Arc<str>>,
}

impl<R: Read> In<R> {
    fn bytes<const N: usize>(&mut self) -> Result<[u8; N], StoreFileError> {
        let mut b = [0u8; N];
        self.r.read_exact(&mut b).map_err(eof)?;
        Ok(b)
    }
    fn u8(&mut self) -> Result<u8, StoreFileError> {
        Ok(self.bytes::<1>()?[0])
    }
    fn u16(&mut self) -> Result<u16, StoreFileError> {
        Ok(u16::from_le_bytes(self.bytes()?))
    }
    fn u32(&mut self) -> Result<u32, StoreFileError> {
        Ok(u32::from_le_bytes(self.bytes()?))
    }
    fn string(&mut self) -> Result<&str, StoreFileError> {
        let i = self.u32()? as usize;
        self.strings.get(i).map(|s| &**s).ok_or(StoreFileError::Corrupt("string index out of range"))
    }
    fn opt_string(&mut self) -> Result<Option<String>, StoreFileError> {
        match self.u32()? {
            ABSENT => Ok(None),
            i => self.strings.get(i as usize).map(|s| Some(s.to_string())).ok_or(StoreFileError::Corrupt("string index out of range")),
        }
    }
    fn id(&mut self) -> Result<EntityId, StoreFileError> {
        EntityId::new(self.string()?).map_err(|_| StoreFileError::Corrupt("empty id"))
    }
}

fn eof(e: io::Error) -> StoreFileError {
    if e.kind() == io::ErrorKind::UnexpectedEof {
        StoreFileError::Truncated
    } else {
        StoreFileError::Io(e)
    }
}

pub fn read_store<R: Read>(r: R) -> Result<GraphStore, StoreFileError> {
    let mut inp = In { r, strings: Vec::new() };
    let magic: [u8; 8] = inp.bytes().map_err(|e| match e {
        StoreFileError::Truncated => StoreFileError::NotAStore,
        other => other,
    })?;
    if &magic != MAGIC {
        return Err(StoreFileError::NotAStore);
    }
    let version = inp.u8()?;
    if version != VERSION {
        return Err(StoreFileError::UnsupportedVersion { found: version, expected: VERSION });
    }
    let n = inp.u32()?;
    let mut buf = Vec::new();
    for _ in 0..n {
        let len = inp.u32()? as usize;
        buf.resize(len, 0);
        inp.r.read_exact(&mut buf).map_err(eof)?;
        let s = std::str::from_utf8(&buf).map_err(|_| StoreFileError::Corrupt("invalid UTF-8 in string table"))?;
        inp.strings.push(Arc::from(s));
    }

    let mut b = GraphStore::builder();
    for _ in 0..inp.u32()? {
        let id = inp.id()?;
        let kind = match inp.u8()? {
            0 => ProductKind::Publication,
            1 => ProductKind::Dataset,
            2 => ProductKind::Software,
            3 => ProductKind::Other,
            _ => return Err(StoreFileError::Corrupt("unknown product kind")),
        };
        let mut p = ResearchProduct::new(id, kind);
        for _ in 0..inp.u32()? {
            let scheme = inp.string()?.to_string();
            let value = inp.string()?;
            p.pids.push(Pid::new(&scheme, value).map_err(|_| StoreFileError::Corrupt("empty pid value"))?);
        }
        p.publication_date = match inp.u8()? {
            0 => None,
            1 => {
                let (y, m, d) = (inp.u16()?, inp.u8()?, inp.u8()?);
                Some(Date::new(y, m, d).map_err(|_| StoreFileError::Corrupt("invalid date"))?)
            }
            _ => return Err(StoreFileError::Corrupt("bad date flag")),
        };
        p.best_access_right = inp.opt_string()?.map(AccessRight::new);
        p.title = inp.opt_string()?;
        b.insert(Entity::Product(p));
    }
    for _ in 0..inp.u32()? {
        let id = inp.id()?;
        let o = Organization {
            id,
            legal_name: inp.opt_string()?,
            legal_short_name: inp.opt_string()?,
            country_code: inp.opt_string()?,
        };
        b.insert(Entity::Organization(o));
    }
    for section in 0..3 {
        for _ in 0..inp.u32()? {
            let e = NamedEntity { id: inp.id()?, name: inp.opt_string()? };
            b.insert(match section {
                0 => Entity::Project(e),
                1 => Entity::Datasource(e),
                _ => Entity::Community(e),
            });
        }
    }
    for _ in 0..inp.u32()? {
        let source = inp.id()?;
        let target = inp.id()?;
        let name = RelName::new(inp.string()?).map_err(|_| StoreFileError::Corrupt("empty relation name"))?;
        b.push_relation(Relation { source, target, name });
    }
    let mut probe = [0u8; 1];
    if inp.r.read(&mut probe).map_err(StoreFileError::Io)? != 0 {
        return Err(StoreFileError::Corrupt("trailing bytes after relations"));
    }
    Ok(b.build())
}

pub fn save(store: &GraphStore, path: &Path) -> io::Result<()> {
    let f = File::create(path)?;
    write_store(store, BufWriter::new(f))
}

pub fn load(path: &Path) -> Result<GraphStore, StoreFileError> {
    let f = File::open(path).map_err(StoreFileError::Io)?;
    read_store(BufReader::new(f))
}
