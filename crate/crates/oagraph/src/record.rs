//! One JSON line to one graph value, and back.
//!
//! Field paths follow the dump schema: `id`, `pid[].scheme/value`,
//! `publicationdate`, `bestaccessright.label`, `mainTitle` for products;
//! `legalname`, `legalshortname`, `country.code` for organizations;
//! `source`, `target`, `reltype.name` for relations. Unknown fields are
//! ignored and empty strings in optional fields read as absent.

use std::borrow::Cow;
use std::fmt;

use oagraph_core::{
    AccessRight, Date, Entity, EntityId, EntityKind, NamedEntity, Organization, Pid, Relation, RelName,
    ResearchProduct,
};
use serde::Deserialize;
use serde_json::{json, Map, Value};

/// Why a line was not accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    Malformed(String),
    InvalidUtf8,
    MissingField(&'static str),
    BadDate(String),
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Malformed(e) => write!(f, "malformed JSON: {e}"),
            Rejection::InvalidUtf8 => f.write_str("line is not valid UTF-8"),
            Rejection::MissingField(name) => write!(f, "missing or empty `{name}`"),
            Rejection::BadDate(d) => write!(f, "unparseable publicationdate `{d}`"),
        }
    }
}

#[derive(Deserialize)]
struct Label<'a> {
    #[serde(borrow, default)]
    label: Option<Cow<'a, str>>,
}

#[derive(Deserialize)]
struct Code<'a> {
    #[serde(borrow, default)]
    code: Option<Cow<'a, str>>,
}

#[derive(Deserialize)]
struct RawPid<'a> {
    #[serde(borrow, default)]
    scheme: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    value: Option<Cow<'a, str>>,
}

#[derive(Deserialize)]
struct RawProduct<'a> {
    #[serde(borrow, default)]
    id: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    pid: Option<Vec<RawPid<'a>>>,
    #[serde(borrow, default)]
    publicationdate: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    bestaccessright: Option<Label<'a>>,
    #[serde(borrow, default, rename = "mainTitle")]
    main_title: Option<Cow<'a, str>>,
}

#[derive(Deserialize)]
struct RawOrganization<'a> {
    #[serde(borrow, default)]
    id: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    legalname: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    legalshortname: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    country: Option<Code<'a>>,
}

#[derive(Deserialize)]
struct RawNamed<'a> {
    #[serde(borrow, default)]
    id: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    title: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    officialname: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    name: Option<Cow<'a, str>>,
}

#[derive(Deserialize)]
struct RelType<'a> {
    #[serde(borrow, default)]
    name: Option<Cow<'a, str>>,
}

#[derive(Deserialize)]
struct RawRelation<'a> {
    #[serde(borrow, default)]
    source: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    target: Option<Cow<'a, str>>,
    #[serde(borrow, default)]
    reltype: Option<RelType<'a>>,
}

fn present(v: Option<Cow<'_, str>>) -> Option<String> {
    v.filter(|s| !s.is_empty()).map(Cow::into_owned)
}

fn required_id(v: Option<Cow<'_, str>>, field: &'static str) -> Result<EntityId, Rejection> {
    v.as_deref().and_then(|s| EntityId::new(s).ok()).ok_or(Rejection::MissingField(field))
}

fn decode<'a, T: Deserialize<'a>>(line: &'a str) -> Result<T, Rejection> {
    serde_json::from_str(line).map_err(|e| Rejection::Malformed(e.to_string()))
}

/// Parses one entity line of the given kind.
pub fn parse_entity_record(kind: EntityKind, line: &str) -> Result<Entity, Rejection> {
    match kind {
        EntityKind::Product(product_kind) => {
            let raw: RawProduct = decode(line)?;
            let mut p = ResearchProduct::new(required_id(raw.id, "id")?, product_kind);
            p.pids = raw
                .pid
                .unwrap_or_default()
                .into_iter()
                .filter_map(|x| Pid::new(x.scheme.as_deref().unwrap_or(""), x.value.as_deref()?).ok())
                .collect();
            if let Some(d) = present(raw.publicationdate) {
                p.publication_date = Some(d.parse::<Date>().map_err(|_| Rejection::BadDate(d))?);
            }
            p.best_access_right = raw.bestaccessright.and_then(|a| present(a.label)).map(AccessRight::new);
            p.title = present(raw.main_title);
            Ok(Entity::Product(p))
        }
        EntityKind::Organization => {
            let raw: RawOrganization = decode(line)?;
            Ok(Entity::Organization(Organization {
                id: required_id(raw.id, "id")?,
                legal_name: present(raw.legalname),
                legal_short_name: present(raw.legalshortname),
                country_code: raw.country.and_then(|c| present(c.code)),
            }))
        }
        EntityKind::Project | EntityKind::Datasource | EntityKind::Community => {
            let raw: RawNamed = decode(line)?;
            let name = match kind {
                EntityKind::Project => raw.title,
                EntityKind::Datasource => raw.officialname,
                _ => raw.name,
            };
            let e = NamedEntity { id: required_id(raw.id, "id")?, name: present(name) };
            Ok(match kind {
                EntityKind::Project => Entity::Project(e),
                EntityKind::Datasource => Entity::Datasource(e),
                _ => Entity::Community(e),
            })
        }
    }
}

pub fn parse_relation_record(line: &str) -> Result<Relation, Rejection> {
    let raw: RawRelation = decode(line)?;
    let source = required_id(raw.source, "source")?;
    let target = required_id(raw.target, "target")?;
    let name = raw
        .reltype
        .and_then(|t| t.name)
        .as_deref()
        .and_then(|n| RelName::new(n).ok())
        .ok_or(Rejection::MissingField("reltype.name"))?;
    Ok(Relation { source, target, name })
}

fn product_type(kind: EntityKind) -> &'static str {
    match kind {
        EntityKind::Product(oagraph_core::ProductKind::Publication) => "publication",
        EntityKind::Product(oagraph_core::ProductKind::Dataset) => "dataset",
        EntityKind::Product(oagraph_core::ProductKind::Software) => "software",
        _ => "other",
    }
}

/// Serializes an entity in the shape [`parse_entity_record`] reads.
pub fn entity_to_json(entity: &Entity) -> String {
    let mut m = Map::new();
    m.insert("id".into(), json!(entity.id().as_str()));
    match entity {
        Entity::Product(p) => {
            m.insert("type".into(), json!(product_type(entity.kind())));
            if !p.pids.is_empty() {
                let pids: Vec<Value> = p.pids.iter().map(|x| json!({"scheme": x.scheme(), "value": x.value()})).collect();
                m.insert("pid".into(), Value::Array(pids));
            }
            if let Some(d) = p.publication_date {
                m.insert("publicationdate".into(), json!(d.to_string()));
            }
            if let Some(a) = &p.best_access_right {
                m.insert("bestaccessright".into(), json!({ "label": a.label }));
            }
            if let Some(t) = &p.title {
                m.insert("mainTitle".into(), json!(t));
            }
        }
        Entity::Organization(o) => {
            if let Some(v) = &o.legal_name {
                m.insert("legalname".into(), json!(v));
            }
            if let Some(v) = &o.legal_short_name {
                m.insert("legalshortname".into(), json!(v));
            }
            if let Some(v) = &o.country_code {
                m.insert("country".into(), json!({ "code": v }));
            }
        }
        Entity::Project(e) | Entity::Datasource(e) | Entity::Community(e) => {
            let key = match entity.kind() {
                EntityKind::Project => "title",
                EntityKind::Datasource => "officialname",
                _ => "name",
            };
            if let Some(n) = &e.name {
                m.insert(key.into(), json!(n));
            }
        }
    }
    Value::Object(m).to_string()
}

pub fn relation_to_json(r: &Relation) -> String {
    json!({"source": r.source.as_str(), "target": r.target.as_str(), "reltype": {"name": r.name.as_str()}}).to_string()
}
