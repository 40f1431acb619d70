//! Entity and relation types of the scholarly graph.
//!
//! The four research-product kinds together form the `results` table; the
//! remaining entity kinds are the context a product links to. Optional fields
//! are always `Option`, never empty-string sentinels.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::borrow::Borrow;
use core::fmt;

use crate::date::Date;
use crate::error::ModelError;

/// Opaque, non-empty OpenAIRE identifier.
///
/// Backed by a shared string so a store can intern every occurrence of the
/// same id into one allocation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityId(Arc<str>);

impl EntityId {
    pub fn new(value: &str) -> Result<Self, ModelError> {
        if value.is_empty() {
            return Err(ModelError::EmptyId);
        }
        Ok(EntityId(Arc::from(value)))
    }

    pub(crate) fn from_shared(value: Arc<str>) -> Self {
        debug_assert!(!value.is_empty());
        EntityId(value)
    }

    pub(crate) fn shared(&self) -> &Arc<str> {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for EntityId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for EntityId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.0)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for EntityId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <alloc::borrow::Cow<'de, str>>::deserialize(deserializer)?;
        EntityId::new(&s).map_err(serde::de::Error::custom)
    }
}

/// The four kinds whose union is `results`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProductKind {
    Publication,
    Dataset,
    Software,
    Other,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] = [
        ProductKind::Publication,
        ProductKind::Dataset,
        ProductKind::Software,
        ProductKind::Other,
    ];
}

/// Every entity kind a store can hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Product(ProductKind),
    Datasource,
    Organization,
    Project,
    Community,
}

impl EntityKind {
    pub const ALL: [EntityKind; 8] = [
        EntityKind::Product(ProductKind::Publication),
        EntityKind::Product(ProductKind::Dataset),
        EntityKind::Product(ProductKind::Software),
        EntityKind::Product(ProductKind::Other),
        EntityKind::Datasource,
        EntityKind::Organization,
        EntityKind::Project,
        EntityKind::Community,
    ];

    pub fn is_product(self) -> bool {
        matches!(self, EntityKind::Product(_))
    }

    /// Name of the dump subdirectory holding this kind.
    pub fn dir_name(self) -> &'static str {
        match self {
            EntityKind::Product(ProductKind::Publication) => "publication",
            EntityKind::Product(ProductKind::Dataset) => "dataset",
            EntityKind::Product(ProductKind::Software) => "software",
            EntityKind::Product(ProductKind::Other) => "otherresearchproduct",
            EntityKind::Datasource => "datasource",
            EntityKind::Organization => "organization",
            EntityKind::Project => "project",
            EntityKind::Community => "community",
        }
    }

    pub fn from_dir_name(name: &str) -> Option<Self> {
        EntityKind::ALL.into_iter().find(|k| k.dir_name() == name)
    }
}

/// Persistent identifier such as a DOI.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pid {
    scheme: String,
    value: String,
}

impl Pid {
    /// Lowercases the scheme; the value must be non-empty.
    pub fn new(scheme: &str, value: &str) -> Result<Self, ModelError> {
        if value.is_empty() {
            return Err(ModelError::EmptyPidValue);
        }
        Ok(Pid { scheme: scheme.to_lowercase(), value: value.into() })
    }

    pub fn scheme(&self) -> &str {
        &self.scheme
    }

    pub fn value(&self) -> &str {
        &self.value
    }
}

impl fmt::Display for Pid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.scheme, self.value)
    }
}

/// Best access right label, kept verbatim from the source record.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AccessRight {
    pub label: String,
}

impl AccessRight {
    pub fn new(label: impl Into<String>) -> Self {
        AccessRight { label: label.into() }
    }
}

/// Access class used by the breakdown queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AccessClass {
    Open,
    Embargo,
    Closed,
    Other,
    Missing,
}

/// Maps the canonical labels by exact, case-sensitive match.
pub fn classify_access(access: Option<&AccessRight>) -> AccessClass {
    match access.map(|a| a.label.as_str()) {
        None => AccessClass::Missing,
        Some("OPEN") => AccessClass::Open,
        Some("EMBARGO") => AccessClass::Embargo,
        Some("CLOSED") => AccessClass::Closed,
        Some(_) => AccessClass::Other,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResearchProduct {
    pub id: EntityId,
    pub kind: ProductKind,
    pub pids: Vec<Pid>,
    pub publication_date: Option<Date>,
    pub best_access_right: Option<AccessRight>,
    pub title: Option<String>,
}

impl ResearchProduct {
    pub fn new(id: EntityId, kind: ProductKind) -> Self {
        ResearchProduct { id, kind, pids: Vec::new(), publication_date: None, best_access_right: None, title: None }
    }

    /// First PID, used as the canonical one by queries.
    pub fn canonical_pid(&self) -> Option<&Pid> {
        self.pids.first()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Organization {
    pub id: EntityId,
    pub legal_name: Option<String>,
    pub legal_short_name: Option<String>,
    pub country_code: Option<String>,
}

impl Organization {
    pub fn new(id: EntityId) -> Self {
        Organization { id, legal_name: None, legal_short_name: None, country_code: None }
    }

    pub fn display_name(&self) -> Option<&str> {
        display_name(self)
    }
}

/// Short legal name when present, else the full legal name.
pub fn display_name(org: &Organization) -> Option<&str> {
    org.legal_short_name.as_deref().or(org.legal_name.as_deref())
}

/// Minimal record shared by projects, datasources and communities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedEntity {
    pub id: EntityId,
    pub name: Option<String>,
}

pub type Project = NamedEntity;
pub type Datasource = NamedEntity;
pub type Community = NamedEntity;

impl NamedEntity {
    pub fn new(id: EntityId) -> Self {
        NamedEntity { id, name: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entity {
    Product(ResearchProduct),
    Organization(Organization),
    Project(Project),
    Datasource(Datasource),
    Community(Community),
}

impl Entity {
    pub fn id(&self) -> &EntityId {
        match self {
            Entity::Product(p) => &p.id,
            Entity::Organization(o) => &o.id,
            Entity::Project(e) | Entity::Datasource(e) | Entity::Community(e) => &e.id,
        }
    }

    pub fn kind(&self) -> EntityKind {
        match self {
            Entity::Product(p) => EntityKind::Product(p.kind),
            Entity::Organization(_) => EntityKind::Organization,
            Entity::Project(_) => EntityKind::Project,
            Entity::Datasource(_) => EntityKind::Datasource,
            Entity::Community(_) => EntityKind::Community,
        }
    }

    pub(crate) fn id_mut(&mut self) -> &mut EntityId {
        match self {
            Entity::Product(p) => &mut p.id,
            Entity::Organization(o) => &mut o.id,
            Entity::Project(e) | Entity::Datasource(e) | Entity::Community(e) => &mut e.id,
        }
    }
}

/// Relation-type name such as `IsCitedBy`. Compared byte-exactly.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelName(Arc<str>);

impl RelName {
    pub fn new(name: &str) -> Result<Self, ModelError> {
        if name.is_empty() {
            return Err(ModelError::EmptyRelationName);
        }
        Ok(RelName(Arc::from(name)))
    }

    pub(crate) fn from_shared(value: Arc<str>) -> Self {
        RelName(value)
    }

    pub(crate) fn shared(&self) -> &Arc<str> {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Borrow<str> for RelName {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl PartialEq<str> for RelName {
    fn eq(&self, other: &str) -> bool {
        &*self.0 == other
    }
}

impl fmt::Debug for RelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for RelName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub const IS_CITED_BY: &str = "IsCitedBy";
pub const IS_AUTHOR_INSTITUTION_OF: &str = "isAuthorInstitutionOf";
pub const IS_PARTICIPANT: &str = "isParticipant";

/// Directed, typed edge between two entity ids. Endpoints need not exist in
/// the store holding the relation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub source: EntityId,
    pub target: EntityId,
    pub name: RelName,
}

impl Relation {
    pub fn new(source: &str, target: &str, name: &str) -> Result<Self, ModelError> {
        Ok(Relation { source: EntityId::new(source)?, target: EntityId::new(target)?, name: RelName::new(name)? })
    }
}
