//! Scientometric queries over a [`GraphStore`].
//!
//! Each query mirrors a relational join over the entity tables and the
//! relation table, so counting follows bag semantics: a product affiliated
//! with two organizations is counted once per affiliation. Descending
//! orderings break ties by ascending group key.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use crate::error::Error;
use crate::model::{
    classify_access, AccessClass, EntityId, Organization, Pid, ProductKind, ResearchProduct, IS_AUTHOR_INSTITUTION_OF,
    IS_CITED_BY, IS_PARTICIPANT,
};
use crate::store::GraphStore;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CitationCount {
    pub product_id: EntityId,
    pub canonical_pid: Option<Pid>,
    pub count: u64,
}

/// Number of `IsCitedBy` relations sourced at each publication.
///
/// Publications without any such relation are omitted.
pub fn citation_counts(store: &GraphStore) -> Vec<CitationCount> {
    let mut counts: BTreeMap<&str, (&ResearchProduct, u64)> = BTreeMap::new();
    for r in store.relations_named(IS_CITED_BY) {
        let Some(p) = store.product(r.source.as_str()) else { continue };
        if p.kind != ProductKind::Publication {
            continue;
        }
        counts.entry(p.id.as_str()).or_insert((p, 0)).1 += 1;
    }
    let mut out: Vec<CitationCount> = counts
        .into_values()
        .map(|(p, count)| CitationCount { product_id: p.id.clone(), canonical_pid: p.canonical_pid().cloned(), count })
        .collect();
    out.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.product_id.cmp(&b.product_id)));
    out
}

/// Per-group tallies of best access rights.
///
/// Products with no access right count towards `total` only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AccessCounts {
    pub total: u64,
    pub open: u64,
    pub embargo: u64,
    pub closed: u64,
    pub other: u64,
}

impl AccessCounts {
    pub fn add(&mut self, class: AccessClass) {
        self.total += 1;
        match class {
            AccessClass::Open => self.open += 1,
            AccessClass::Embargo => self.embargo += 1,
            AccessClass::Closed => self.closed += 1,
            AccessClass::Other => self.other += 1,
            AccessClass::Missing => {}
        }
    }

    pub fn merge(&mut self, other: &AccessCounts) {
        self.total += other.total;
        self.open += other.open;
        self.embargo += other.embargo;
        self.closed += other.closed;
        self.other += other.other;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessBreakdownRow<K> {
    pub key: K,
    pub counts: AccessCounts,
}

/// Organization display name and publication year; either may be absent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrgYear {
    pub organization: Option<String>,
    pub year: Option<u16>,
}

/// `(organization, product)` pairs joined over `isAuthorInstitutionOf`.
fn affiliations(store: &GraphStore) -> impl Iterator<Item = (&Organization, &ResearchProduct)> + '_ {
    store.relations_named(IS_AUTHOR_INSTITUTION_OF).filter_map(move |r| {
        let org = store.organization(r.source.as_str())?;
        let product = store.product(r.target.as_str())?;
        Some((org, product))
    })
}

/// Access-right breakdown of affiliated products, grouped by organization
/// country. Organizations without a country are skipped.
pub fn access_breakdown_by_country(store: &GraphStore) -> Vec<AccessBreakdownRow<String>> {
    let mut groups: BTreeMap<&str, AccessCounts> = BTreeMap::new();
    for (org, product) in affiliations(store) {
        let Some(country) = org.country_code.as_deref() else { continue };
        groups.entry(country).or_default().add(classify_access(product.best_access_right.as_ref()));
    }
    let mut rows: Vec<_> =
        groups.into_iter().map(|(k, counts)| AccessBreakdownRow { key: String::from(k), counts }).collect();
    rows.sort_by(|a, b| b.counts.total.cmp(&a.counts.total).then_with(|| a.key.cmp(&b.key)));
    rows
}

/// Access-right breakdown grouped by organization display name and
/// publication year, ordered by organization then total descending.
pub fn oa_breakdown_by_org_year(store: &GraphStore) -> Vec<AccessBreakdownRow<OrgYear>> {
    let mut groups: BTreeMap<(Option<&str>, Option<u16>), AccessCounts> = BTreeMap::new();
    for (org, product) in affiliations(store) {
        let key = (org.display_name(), product.publication_date.map(|d| d.year()));
        groups.entry(key).or_default().add(classify_access(product.best_access_right.as_ref()));
    }
    let mut rows: Vec<_> = groups
        .into_iter()
        .map(|((name, year), counts)| AccessBreakdownRow {
            key: OrgYear { organization: name.map(String::from), year },
            counts,
        })
        .collect();
    rows.sort_by(|a, b| {
        a.key
            .organization
            .cmp(&b.key.organization)
            .then_with(|| b.counts.total.cmp(&a.counts.total))
            .then_with(|| a.key.year.cmp(&b.key.year))
    });
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoParticipationMode {
    /// Each project contributes 1 to every unordered pair of distinct
    /// countries among its participants.
    #[default]
    Distinct,
    /// Self-join of participation rows with `left <= right`: keeps
    /// self-pairs and multiplies by same-country organization counts.
    PaperCompat,
}

impl FromStr for CoParticipationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "distinct" => Ok(CoParticipationMode::Distinct),
            "paper-compat" => Ok(CoParticipationMode::PaperCompat),
            other => Err(Error::UnknownMode(other.into())),
        }
    }
}

/// Undirected country pair with `left <= right`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoParticipationEdge {
    pub left: String,
    pub right: String,
    pub weight: u64,
}

/// Country co-participation network over `isParticipant` relations.
///
/// A participation row is an `isParticipant` relation whose source is an
/// organization with a country; its target is taken as the project id whether
/// or not the project itself is in the store.
pub fn co_participation_edges(store: &GraphStore, mode: CoParticipationMode) -> Vec<CoParticipationEdge> {
    // project id -> country -> number of participation rows
    let mut projects: BTreeMap<&str, BTreeMap<&str, u64>> = BTreeMap::new();
    for r in store.relations_named(IS_PARTICIPANT) {
        let Some(country) = store.organization(r.source.as_str()).and_then(|o| o.country_code.as_deref()) else {
            continue;
        };
        *projects.entry(r.target.as_str()).or_default().entry(country).or_insert(0) += 1;
    }

    let mut weights: BTreeMap<(&str, &str), u64> = BTreeMap::new();
    for countries in projects.values() {
        let list: Vec<(&str, u64)> = countries.iter().map(|(c, n)| (*c, *n)).collect();
        for (i, &(a, na)) in list.iter().enumerate() {
            if mode == CoParticipationMode::PaperCompat {
                *weights.entry((a, a)).or_insert(0) += na * na;
            }
            for &(b, nb) in &list[i + 1..] {
                let w = match mode {
                    CoParticipationMode::Distinct => 1,
                    CoParticipationMode::PaperCompat => na * nb,
                };
                *weights.entry((a, b)).or_insert(0) += w;
            }
        }
    }

    let mut edges: Vec<CoParticipationEdge> = weights
        .into_iter()
        .map(|((l, r), weight)| CoParticipationEdge { left: l.into(), right: r.into(), weight })
        .collect();
    edges.sort_by(|a, b| b.weight.cmp(&a.weight).then_with(|| (&a.left, &a.right).cmp(&(&b.left, &b.right))));
    edges
}

pub fn focus_country(edges: &[CoParticipationEdge], country: &str) -> Vec<CoParticipationEdge> {
    edges.iter().filter(|e| e.left == country || e.right == country).cloned().collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedEdge {
    pub edge: CoParticipationEdge,
    /// `weight / max weight`, in `(0, 1]`.
    pub normalized: f64,
}

pub fn normalize_weights(edges: &[CoParticipationEdge]) -> Result<Vec<NormalizedEdge>, Error> {
    let max = edges.iter().map(|e| e.weight).max().ok_or(Error::EmptyEdges)?;
    Ok(edges
        .iter()
        .map(|e| NormalizedEdge { edge: e.clone(), normalized: e.weight as f64 / max as f64 })
        .collect())
}

/// Distinct countries appearing in `edges`, sorted.
pub fn countries(edges: &[CoParticipationEdge]) -> BTreeSet<&str> {
    edges.iter().flat_map(|e| [e.left.as_str(), e.right.as_str()]).collect()
}
