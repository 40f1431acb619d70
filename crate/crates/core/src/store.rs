//! Immutable, indexed graph store.
//!
//! Entities live in one ordered map per kind. Relations are kept in a single
//! vector sorted by `(source, target, name)`; that order doubles as the
//! source index, and two permutation vectors index by target and by relation
//! name. Every id string is interned, so a relation costs three pointers no
//! matter how often its endpoints repeat.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::mem::size_of;

use crate::model::{
    Community, Datasource, Entity, EntityId, EntityKind, Organization, ProductKind, Project, RelName, Relation,
    ResearchProduct,
};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphStore {
    products: BTreeMap<EntityId, ResearchProduct>,
    organizations: BTreeMap<EntityId, Organization>,
    projects: BTreeMap<EntityId, Project>,
    datasources: BTreeMap<EntityId, Datasource>,
    communities: BTreeMap<EntityId, Community>,
    relations: Vec<Relation>,
    by_target: Vec<u32>,
    by_name: Vec<u32>,
}

/// Entity and relation counts of a store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Stats {
    pub publications: u64,
    pub datasets: u64,
    pub software: u64,
    pub others: u64,
    pub datasources: u64,
    pub organizations: u64,
    pub communities: u64,
    pub projects: u64,
    pub relations: u64,
    pub relation_types: u64,
}

impl Stats {
    pub fn count(&self, kind: EntityKind) -> u64 {
        match kind {
            EntityKind::Product(ProductKind::Publication) => self.publications,
            EntityKind::Product(ProductKind::Dataset) => self.datasets,
            EntityKind::Product(ProductKind::Software) => self.software,
            EntityKind::Product(ProductKind::Other) => self.others,
            EntityKind::Datasource => self.datasources,
            EntityKind::Organization => self.organizations,
            EntityKind::Project => self.projects,
            EntityKind::Community => self.communities,
        }
    }

    pub fn entities(&self) -> u64 {
        EntityKind::ALL.iter().map(|k| self.count(*k)).sum()
    }
}

impl GraphStore {
    pub fn builder() -> StoreBuilder {
        StoreBuilder::default()
    }

    /// Builds a store from entities and relations; later duplicates of an id win.
    pub fn from_parts(entities: impl IntoIterator<Item = Entity>, relations: impl IntoIterator<Item = Relation>) -> Self {
        let mut b = StoreBuilder::default();
        for e in entities {
            b.insert(e);
        }
        for r in relations {
            b.push_relation(r);
        }
        b.build()
    }

    pub fn products(&self) -> impl Iterator<Item = &ResearchProduct> + '_ {
        self.products.values()
    }

    pub fn product(&self, id: &str) -> Option<&ResearchProduct> {
        self.products.get(id)
    }

    pub fn organizations(&self) -> impl Iterator<Item = &Organization> + '_ {
        self.organizations.values()
    }

    pub fn organization(&self, id: &str) -> Option<&Organization> {
        self.organizations.get(id)
    }

    pub fn projects(&self) -> impl Iterator<Item = &Project> + '_ {
        self.projects.values()
    }

    pub fn project(&self, id: &str) -> Option<&Project> {
        self.projects.get(id)
    }

    pub fn datasources(&self) -> impl Iterator<Item = &Datasource> + '_ {
        self.datasources.values()
    }

    pub fn datasource(&self, id: &str) -> Option<&Datasource> {
        self.datasources.get(id)
    }

    pub fn communities(&self) -> impl Iterator<Item = &Community> + '_ {
        self.communities.values()
    }

    pub fn community(&self, id: &str) -> Option<&Community> {
        self.communities.get(id)
    }

    pub fn entity_kind(&self, id: &str) -> Option<EntityKind> {
        if let Some(p) = self.products.get(id) {
            Some(EntityKind::Product(p.kind))
        } else if self.organizations.contains_key(id) {
            Some(EntityKind::Organization)
        } else if self.projects.contains_key(id) {
            Some(EntityKind::Project)
        } else if self.datasources.contains_key(id) {
            Some(EntityKind::Datasource)
        } else if self.communities.contains_key(id) {
            Some(EntityKind::Community)
        } else {
            None
        }
    }

    pub fn contains(&self, id: &str) -> bool {
        self.entity_kind(id).is_some()
    }

    /// All entities, grouped by kind and ordered by id within a kind.
    pub fn entities(&self) -> impl Iterator<Item = Entity> + '_ {
        self.products
            .values()
            .cloned()
            .map(Entity::Product)
            .chain(self.organizations.values().cloned().map(Entity::Organization))
            .chain(self.projects.values().cloned().map(Entity::Project))
            .chain(self.datasources.values().cloned().map(Entity::Datasource))
            .chain(self.communities.values().cloned().map(Entity::Community))
    }

    /// Master relation list in `(source, target, name)` order.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relations_from(&self, source: &str) -> &[Relation] {
        let lo = self.relations.partition_point(|r| r.source.as_str() < source);
        let hi = lo + self.relations[lo..].partition_point(|r| r.source.as_str() == source);
        &self.relations[lo..hi]
    }

    pub fn relations_to<'a>(&'a self, target: &str) -> impl Iterator<Item = &'a Relation> + 'a {
        let rels = &self.relations;
        let lo = self.by_target.partition_point(|&i| rels[i as usize].target.as_str() < target);
        let len = self.by_target[lo..].partition_point(|&i| rels[i as usize].target.as_str() == target);
        self.by_target[lo..lo + len].iter().map(move |&i| &rels[i as usize])
    }

    pub fn relations_named<'a>(&'a self, name: &str) -> impl Iterator<Item = &'a Relation> + 'a {
        let rels = &self.relations;
        let lo = self.by_name.partition_point(|&i| rels[i as usize].name.as_str() < name);
        let len = self.by_name[lo..].partition_point(|&i| rels[i as usize].name.as_str() == name);
        self.by_name[lo..lo + len].iter().map(move |&i| &rels[i as usize])
    }

    /// Full target index, grouped by target id.
    pub fn relations_by_target(&self) -> impl Iterator<Item = &Relation> + '_ {
        self.by_target.iter().map(move |&i| &self.relations[i as usize])
    }

    /// Full name index, grouped by relation name.
    pub fn relations_by_name(&self) -> impl Iterator<Item = &Relation> + '_ {
        self.by_name.iter().map(move |&i| &self.relations[i as usize])
    }

    /// Relations with at least one endpoint missing from the store.
    pub fn dangling_relations(&self) -> usize {
        self.relations.iter().filter(|r| !self.contains(r.source.as_str()) || !self.contains(r.target.as_str())).count()
    }

    pub fn stats(&self) -> Stats {
        let mut s = Stats::default();
        for p in self.products.values() {
            match p.kind {
                ProductKind::Publication => s.publications += 1,
                ProductKind::Dataset => s.datasets += 1,
                ProductKind::Software => s.software += 1,
                ProductKind::Other => s.others += 1,
            }
        }
        s.organizations = self.organizations.len() as u64;
        s.projects = self.projects.len() as u64;
        s.datasources = self.datasources.len() as u64;
        s.communities = self.communities.len() as u64;
        s.relations = self.relations.len() as u64;
        let mut distinct = 0u64;
        let mut prev: Option<&RelName> = None;
        for r in self.relations_by_name() {
            if prev != Some(&r.name) {
                distinct += 1;
                prev = Some(&r.name);
            }
        }
        s.relation_types = distinct;
        s
    }

    /// Rough heap footprint: containers plus each distinct string once.
    pub fn approx_heap_bytes(&self) -> usize {
        // BTreeMap nodes carry roughly one key/value slot of overhead per entry.
        fn map_bytes<V>(m: &BTreeMap<EntityId, V>) -> usize {
            m.len() * 2 * (size_of::<EntityId>() + size_of::<V>())
        }
        let mut strings: BTreeSet<*const u8> = BTreeSet::new();
        let mut string_bytes = 0usize;
        let mut count = |s: &Arc<str>| {
            if strings.insert(s.as_ptr()) {
                string_bytes += s.len() + 2 * size_of::<usize>();
            }
        };
        for r in &self.relations {
            count(r.source.shared());
            count(r.target.shared());
            count(r.name.shared());
        }
        for id in self
            .products
            .keys()
            .chain(self.organizations.keys())
            .chain(self.projects.keys())
            .chain(self.datasources.keys())
            .chain(self.communities.keys())
        {
            count(id.shared());
        }
        let payload: usize = self
            .products
            .values()
            .map(|p| {
                p.pids.iter().map(|x| size_of::<crate::model::Pid>() + x.scheme().len() + x.value().len()).sum::<usize>()
                    + p.title.as_ref().map_or(0, |t| t.len())
                    + p.best_access_right.as_ref().map_or(0, |a| a.label.len())
            })
            .sum::<usize>()
            + self
                .organizations
                .values()
                .map(|o| {
                    [&o.legal_name, &o.legal_short_name, &o.country_code]
                        .iter()
                        .map(|s| s.as_ref().map_or(0, |s| s.len()))
                        .sum::<usize>()
                })
                .sum::<usize>();
        map_bytes(&self.products)
            + map_bytes(&self.organizations)
            + map_bytes(&self.projects)
            + map_bytes(&self.datasources)
            + map_bytes(&self.communities)
            + self.relations.len() * size_of::<Relation>()
            + (self.by_target.len() + self.by_name.len()) * size_of::<u32>()
            + string_bytes
            + payload
    }
}

/// Outcome of inserting an entity into a [`StoreBuilder`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inserted {
    New,
    /// An entity with the same id existed and was replaced; carries its kind.
    Replaced(EntityKind),
    /// An entity with the same id and a higher rank already existed; the
    /// insert was discarded.
    Superseded(EntityKind),
}

/// Accumulates entities and relations, interning id strings.
///
/// Duplicate ids resolve by rank: the entity with the highest rank wins, ties
/// going to the later insert. Ranks let a caller feed records in any order and
/// still get the outcome of a fixed sequential order.
#[derive(Debug, Default)]
pub struct StoreBuilder {
    strings: BTreeSet<Arc<str>>,
    entities: BTreeMap<EntityId, (u64, Entity)>,
    relations: Vec<Relation>,
    next_rank: u64,
}

impl StoreBuilder {
    fn intern(&mut self, s: &Arc<str>) -> Arc<str> {
        match self.strings.get(&**s) {
            Some(existing) => existing.clone(),
            None => {
                self.strings.insert(s.clone());
                s.clone()
            }
        }
    }

    pub fn insert(&mut self, entity: Entity) -> Inserted {
        let rank = self.next_rank;
        self.insert_ranked(rank, entity)
    }

    pub fn insert_ranked(&mut self, rank: u64, mut entity: Entity) -> Inserted {
        self.next_rank = self.next_rank.max(rank.saturating_add(1));
        let id = EntityId::from_shared(self.intern(entity.id().shared()));
        *entity.id_mut() = id.clone();
        match self.entities.get_mut(&id) {
            None => {
                self.entities.insert(id, (rank, entity));
                Inserted::New
            }
            Some(slot) => {
                let prev_kind = slot.1.kind();
                if rank >= slot.0 {
                    *slot = (rank, entity);
                    Inserted::Replaced(prev_kind)
                } else {
                    Inserted::Superseded(prev_kind)
                }
            }
        }
    }

    pub fn push_relation(&mut self, rel: Relation) {
        let source = EntityId::from_shared(self.intern(rel.source.shared()));
        let target = EntityId::from_shared(self.intern(rel.target.shared()));
        let name = RelName::from_shared(self.intern(rel.name.shared()));
        self.relations.push(Relation { source, target, name });
    }

    pub fn entity_count(&self) -> usize {
        self.entities.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    /// Sorts relations canonically and builds the indexes.
    ///
    /// Panics if there are more than `u32::MAX` relations.
    pub fn build(self) -> GraphStore {
        let StoreBuilder { strings, entities, mut relations, .. } = self;
        drop(strings);
        assert!(relations.len() <= u32::MAX as usize, "relation count exceeds index width");
        relations.shrink_to_fit();
        relations.sort_unstable();

        let mut store = GraphStore::default();
        for (id, (_, entity)) in entities {
            match entity {
                Entity::Product(p) => {
                    store.products.insert(id, p);
                }
                Entity::Organization(o) => {
                    store.organizations.insert(id, o);
                }
                Entity::Project(p) => {
                    store.projects.insert(id, p);
                }
                Entity::Datasource(d) => {
                    store.datasources.insert(id, d);
                }
                Entity::Community(c) => {
                    store.communities.insert(id, c);
                }
            }
        }

        let mut by_target: Vec<u32> = (0..relations.len() as u32).collect();
        by_target.sort_unstable_by(|&a, &b| relations[a as usize].target.cmp(&relations[b as usize].target).then(a.cmp(&b)));
        let mut by_name: Vec<u32> = (0..relations.len() as u32).collect();
        by_name.sort_unstable_by(|&a, &b| relations[a as usize].name.cmp(&relations[b as usize].name).then(a.cmp(&b)));

        store.relations = relations;
        store.by_target = by_target;
        store.by_name = by_name;
        store
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::NamedEntity;
    use alloc::vec;

    fn pubn(id: &str) -> Entity {
        Entity::Product(ResearchProduct::new(EntityId::new(id).unwrap(), ProductKind::Publication))
    }

    fn rel(s: &str, t: &str, n: &str) -> Relation {
        Relation::new(s, t, n).unwrap()
    }

    #[test]
    fn empty_store_has_zero_stats() {
        let s = GraphStore::builder().build();
        assert_eq!(s.stats(), Stats::default());
        assert_eq!(s.relations_from("x").len(), 0);
        assert_eq!(s.relations_to("x").count(), 0);
    }

    #[test]
    fn indexes_find_relations() {
        let s = GraphStore::from_parts(
            vec![pubn("p1"), pubn("p2")],
            vec![rel("p2", "p1", "IsCitedBy"), rel("p1", "p2", "IsCitedBy"), rel("p1", "x", "Cites"), rel("p1", "p2", "IsCitedBy")],
        );
        assert_eq!(s.relations_from("p1").len(), 3);
        assert_eq!(s.relations_to("p2").count(), 2);
        assert_eq!(s.relations_named("IsCitedBy").count(), 3);
        assert_eq!(s.relations_named("isCitedBy").count(), 0);
        let st = s.stats();
        assert_eq!((st.publications, st.relations, st.relation_types), (2, 4, 2));
        assert_eq!(s.dangling_relations(), 1);
    }

    #[test]
    fn duplicates_resolve_by_rank() {
        let mut b = GraphStore::builder();
        let org = |name: &str| {
            Entity::Organization(Organization { legal_name: Some(name.into()), ..Organization::new(EntityId::new("x").unwrap()) })
        };
        assert_eq!(b.insert_ranked(5, org("late")), Inserted::New);
        assert_eq!(b.insert_ranked(2, org("early")), Inserted::Superseded(EntityKind::Organization));
        assert_eq!(b.insert_ranked(7, Entity::Project(NamedEntity::new(EntityId::new("x").unwrap()))), Inserted::Replaced(EntityKind::Organization));
        let s = b.build();
        assert_eq!(s.entity_kind("x"), Some(EntityKind::Project));
        assert_eq!(s.stats().organizations, 0);
    }

    #[test]
    fn ids_are_interned() {
        let mut b = GraphStore::builder();
        b.insert(pubn("p1"));
        b.push_relation(rel("p1", "p1", "IsCitedBy"));
        let s = b.build();
        let r = &s.relations()[0];
        assert!(Arc::ptr_eq(r.source.shared(), r.target.shared()));
        let (key, _) = s.products.iter().next().unwrap();
        assert!(Arc::ptr_eq(key.shared(), r.source.shared()));
    }
}
