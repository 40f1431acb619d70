//! Naive reference implementations over raw entity and relation lists.
//!
//! Nothing here touches `GraphStore` or its indexes: every lookup is a linear
//! scan and every join a nested loop, so agreement with the library is
//! evidence rather than tautology.

use std::cmp::Reverse;

use oagraph_core::{Date, DateWindow, Entity, Organization, ProductKind, Relation, ResearchProduct};

use super::random::RawGraph;

fn find<'a>(g: &'a RawGraph, id: &str) -> Option<&'a Entity> {
    g.entities.iter().find(|e| e.id().as_str() == id)
}

fn find_product<'a>(g: &'a RawGraph, id: &str) -> Option<&'a ResearchProduct> {
    match find(g, id) {
        Some(Entity::Product(p)) => Some(p),
        _ => None,
    }
}

fn orgs(g: &RawGraph) -> impl Iterator<Item = &Organization> {
    g.entities.iter().filter_map(|e| match e {
        Entity::Organization(o) => Some(o),
        _ => None,
    })
}

fn in_window(d: Option<Date>, w: &DateWindow) -> bool {
    match d {
        Some(d) => w.from() <= d && d <= w.to(),
        None => false,
    }
}

/// Selected entities (sorted by id) and induced relations (sorted).
pub fn subset(g: &RawGraph, w: &DateWindow) -> (Vec<Entity>, Vec<Relation>) {
    // pass 1: seeds
    let mut selected: Vec<String> = Vec::new();
    for e in &g.entities {
        if let Entity::Product(p) = e {
            if in_window(p.publication_date, w) {
                selected.push(p.id.as_str().to_string());
            }
        }
    }
    let seeds = selected.clone();
    // pass 2: one hop, either direction, non-products only
    for r in &g.relations {
        for s in &seeds {
            for other in [
                (r.source.as_str() == s).then_some(r.target.as_str()),
                (r.target.as_str() == s).then_some(r.source.as_str()),
            ]
            .into_iter()
            .flatten()
            {
                let is_context = matches!(find(g, other), Some(e) if !matches!(e, Entity::Product(_)));
                if is_context && !selected.iter().any(|x| x == other) {
                    selected.push(other.to_string());
                }
            }
        }
    }
    // pass 3: both endpoints selected
    let mut rels: Vec<Relation> = g
        .relations
        .iter()
        .filter(|r| {
            selected.iter().any(|x| x == r.source.as_str()) && selected.iter().any(|x| x == r.target.as_str())
        })
        .cloned()
        .collect();
    rels.sort();
    let mut ents: Vec<Entity> = selected.iter().map(|id| find(g, id).unwrap().clone()).collect();
    ents.sort_by(|a, b| a.id().cmp(b.id()));
    (ents, rels)
}

pub type CitationRow = (String, Option<String>, u64);

pub fn citation_counts(g: &RawGraph) -> Vec<CitationRow> {
    let mut out = Vec::new();
    for e in &g.entities {
        let Entity::Product(p) = e else { continue };
        if p.kind != ProductKind::Publication {
            continue;
        }
        let n = g.relations.iter().filter(|r| r.source.as_str() == p.id.as_str() && r.name.as_str() == "IsCitedBy").count() as u64;
        if n > 0 {
            out.push((p.id.as_str().to_string(), p.pids.first().map(|x| x.to_string()), n));
        }
    }
    out.sort_by(|a, b| (Reverse(a.2), &a.0).cmp(&(Reverse(b.2), &b.0)));
    out
}

/// `[total, open, embargo, closed, other]`
pub type Tally = [u64; 5];

fn tally(t: &mut Tally, p: &ResearchProduct) {
    t[0] += 1;
    match p.best_access_right.as_ref().map(|a| a.label.as_str()) {
        Some("OPEN") => t[1] += 1,
        Some("EMBARGO") => t[2] += 1,
        Some("CLOSED") => t[3] += 1,
        Some(_) => t[4] += 1,
        None => {}
    }
}

fn group<'a, K: PartialEq + Clone>(groups: &'a mut Vec<(K, Tally)>, key: &K) -> &'a mut Tally {
    let pos = match groups.iter().position(|(k, _)| k == key) {
        Some(i) => i,
        None => {
            groups.push((key.clone(), [0; 5]));
            groups.len() - 1
        }
    };
    &mut groups[pos].1
}

pub fn access_by_country(g: &RawGraph) -> Vec<(String, Tally)> {
    let mut groups: Vec<(String, Tally)> = Vec::new();
    for o in orgs(g) {
        let Some(country) = &o.country_code else { continue };
        for r in &g.relations {
            if r.name.as_str() != "isAuthorInstitutionOf" || r.source.as_str() != o.id.as_str() {
                continue;
            }
            if let Some(p) = find_product(g, r.target.as_str()) {
                tally(group(&mut groups, country), p);
            }
        }
    }
    groups.sort_by(|a, b| (Reverse(a.1[0]), &a.0).cmp(&(Reverse(b.1[0]), &b.0)));
    groups
}

pub type OrgYearKey = (Option<String>, Option<u16>);

pub fn oa_by_org_year(g: &RawGraph) -> Vec<(OrgYearKey, Tally)> {
    let mut groups: Vec<(OrgYearKey, Tally)> = Vec::new();
    for o in orgs(g) {
        let name = match (&o.legal_short_name, &o.legal_name) {
            (Some(s), _) => Some(s.clone()),
            (None, Some(l)) => Some(l.clone()),
            (None, None) => None,
        };
        for r in &g.relations {
            if r.name.as_str() != "isAuthorInstitutionOf" || r.source.as_str() != o.id.as_str() {
                continue;
            }
            if let Some(p) = find_product(g, r.target.as_str()) {
                let key = (name.clone(), p.publication_date.map(|d| d.year()));
                tally(group(&mut groups, &key), p);
            }
        }
    }
    groups.sort_by(|a, b| (&a.0 .0, Reverse(a.1[0]), a.0 .1).cmp(&(&b.0 .0, Reverse(b.1[0]), b.0 .1)));
    groups
}

pub type EdgeRow = (String, String, u64);

/// `(country, project id)` rows of the participation self-join input.
fn participation_rows(g: &RawGraph) -> Vec<(String, String)> {
    let mut rows = Vec::new();
    for o in orgs(g) {
        let Some(country) = &o.country_code else { continue };
        for r in &g.relations {
            if r.name.as_str() == "isParticipant" && r.source.as_str() == o.id.as_str() {
                rows.push((country.clone(), r.target.as_str().to_string()));
            }
        }
    }
    rows
}

fn sort_edges(mut edges: Vec<EdgeRow>) -> Vec<EdgeRow> {
    edges.sort_by(|a, b| (Reverse(a.2), &a.0, &a.1).cmp(&(Reverse(b.2), &b.0, &b.1)));
    edges
}

fn bump(edges: &mut Vec<EdgeRow>, l: &str, r: &str) {
    match edges.iter_mut().find(|e| e.0 == l && e.1 == r) {
        Some(e) => e.2 += 1,
        None => edges.push((l.to_string(), r.to_string(), 1)),
    }
}

/// Literal self-join: every ordered pair of rows on the same project with
/// `left.country <= right.country`.
pub fn co_participation_compat(g: &RawGraph) -> Vec<EdgeRow> {
    let rows = participation_rows(g);
    let mut edges = Vec::new();
    for l in &rows {
        for r in &rows {
            if l.1 == r.1 && l.0 <= r.0 {
                bump(&mut edges, &l.0, &r.0);
            }
        }
    }
    sort_edges(edges)
}

/// One count per project for every pair of distinct countries it has.
pub fn co_participation_distinct(g: &RawGraph) -> Vec<EdgeRow> {
    let rows = participation_rows(g);
    let mut projects: Vec<&str> = rows.iter().map(|r| r.1.as_str()).collect();
    projects.sort();
    projects.dedup();
    let mut edges = Vec::new();
    for project in projects {
        let mut cs: Vec<&str> = rows.iter().filter(|r| r.1 == project).map(|r| r.0.as_str()).collect();
        cs.sort();
        cs.dedup();
        for a in &cs {
            for b in &cs {
                if a < b {
                    bump(&mut edges, a, b);
                }
            }
        }
    }
    sort_edges(edges)
}
