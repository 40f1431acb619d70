//! Date-windowed subset extraction.
//!
//! Three passes: products published inside the window become seeds; every
//! non-product entity one hop away from a seed (either relation direction)
//! joins them; finally every relation with both endpoints selected is kept.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::date::Date;
use crate::error::Error;
use crate::model::{Entity, EntityId, EntityKind, Relation};
use crate::store::{GraphStore, Stats};

/// Inclusive date range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DateWindow {
    from: Date,
    to: Date,
}

impl DateWindow {
    pub fn new(from: Date, to: Date) -> Result<Self, Error> {
        if from > to {
            return Err(Error::InvertedWindow);
        }
        Ok(DateWindow { from, to })
    }

    pub fn from(&self) -> Date {
        self.from
    }

    pub fn to(&self) -> Date {
        self.to
    }

    pub fn contains(&self, date: Date) -> bool {
        self.from <= date && date <= self.to
    }
}

/// What a subset run selected.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SubsetManifest {
    pub window: DateWindow,
    pub counts: Stats,
    /// Selected ids keyed by dump directory name.
    pub selected: BTreeMap<&'static str, Vec<EntityId>>,
}

pub fn select_seed_products(store: &GraphStore, window: &DateWindow) -> BTreeSet<EntityId> {
    store
        .products()
        .filter(|p| p.publication_date.is_some_and(|d| window.contains(d)))
        .map(|p| p.id.clone())
        .collect()
}

/// Non-product entities sharing a relation with some seed product.
pub fn expand_entities(store: &GraphStore, seed: &BTreeSet<EntityId>) -> BTreeSet<EntityId> {
    let mut out = BTreeSet::new();
    let mut consider = |other: &EntityId| {
        if let Some(kind) = store.entity_kind(other.as_str()) {
            if !kind.is_product() {
                out.insert(other.clone());
            }
        }
    };
    for id in seed {
        if store.product(id.as_str()).is_none() {
            continue;
        }
        for r in store.relations_from(id.as_str()) {
            consider(&r.target);
        }
        for r in store.relations_to(id.as_str()) {
            consider(&r.source);
        }
    }
    out
}

/// Relations whose endpoints are both in `selected`, in store order.
pub fn induce_relations(store: &GraphStore, selected: &BTreeSet<EntityId>) -> Vec<Relation> {
    let mut out = Vec::new();
    for source in selected {
        for r in store.relations_from(source.as_str()) {
            if selected.contains(r.target.as_str()) {
                out.push(r.clone());
            }
        }
    }
    out
}

pub fn extract_subset(store: &GraphStore, window: &DateWindow) -> (GraphStore, SubsetManifest) {
    let seed = select_seed_products(store, window);
    let context = expand_entities(store, &seed);
    let mut selected = seed;
    selected.extend(context);
    let relations = induce_relations(store, &selected);

    let mut builder = GraphStore::builder();
    for id in &selected {
        let id = id.as_str();
        let entity = match store.entity_kind(id) {
            Some(EntityKind::Product(_)) => store.product(id).cloned().map(Entity::Product),
            Some(EntityKind::Organization) => store.organization(id).cloned().map(Entity::Organization),
            Some(EntityKind::Project) => store.project(id).cloned().map(Entity::Project),
            Some(EntityKind::Datasource) => store.datasource(id).cloned().map(Entity::Datasource),
            Some(EntityKind::Community) => store.community(id).cloned().map(Entity::Community),
            None => None,
        };
        if let Some(e) = entity {
            builder.insert(e);
        }
    }
    for r in relations {
        builder.push_relation(r);
    }
    let out = builder.build();

    let mut by_kind: BTreeMap<&'static str, Vec<EntityId>> =
        EntityKind::ALL.iter().map(|k| (k.dir_name(), Vec::new())).collect();
    for id in &selected {
        if let Some(kind) = out.entity_kind(id.as_str()) {
            by_kind.get_mut(kind.dir_name()).expect("every kind has a slot").push(id.clone());
        }
    }
    let manifest = SubsetManifest { window: *window, counts: out.stats(), selected: by_kind };
    (out, manifest)
}
