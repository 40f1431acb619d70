//! Seeded random graphs for oracle comparisons.

use oagraph_core::{
    AccessRight, Date, DateWindow, Entity, EntityId, NamedEntity, Organization, Pid, ProductKind, Relation,
    ResearchProduct,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// Raw entity and relation lists; entity ids are unique.
#[derive(Debug, Clone)]
pub struct RawGraph {
    pub entities: Vec<Entity>,
    pub relations: Vec<Relation>,
}

const REL_NAMES: [&str; 6] = ["IsCitedBy", "isAuthorInstitutionOf", "isParticipant", "Cites", "isProvidedBy", "isCitedBy"];
const COUNTRIES: [&str; 5] = ["IT", "FR", "DE", "ES", "NL"];
const LABELS: [&str; 4] = ["OPEN", "EMBARGO", "CLOSED", "RESTRICTED"];
const ORG_NAMES: [&str; 4] = ["CNR", "CNRS", "MPG", "CSIC"];

pub fn random_date(rng: &mut StdRng, from_year: u16, to_year: u16) -> Date {
    let year = rng.gen_range(from_year..=to_year);
    let month = rng.gen_range(1..=12);
    let day = rng.gen_range(1..=oagraph_core::date::days_in_month(year, month));
    Date::new(year, month, day).unwrap()
}

pub fn random_window(rng: &mut StdRng) -> DateWindow {
    let a = random_date(rng, 2021, 2025);
    let b = random_date(rng, 2021, 2025);
    DateWindow::new(a.min(b), a.max(b)).unwrap()
}

/// Up to `max_entities` entities and `max_relations` relations with dates in
/// 2022..=2024. Relation endpoints are mostly real ids, sometimes dangling.
pub fn random_graph(rng: &mut StdRng, max_entities: usize, max_relations: usize) -> RawGraph {
    let n = rng.gen_range(0..=max_entities);
    let mut entities = Vec::with_capacity(n);
    for i in 0..n {
        let id = EntityId::new(&format!("e{i:03}")).unwrap();
        let e = match rng.gen_range(0..10) {
            0..=4 => {
                let kind = *[ProductKind::Publication, ProductKind::Publication, ProductKind::Dataset, ProductKind::Software, ProductKind::Other]
                    .choose(rng)
                    .unwrap();
                let mut p = ResearchProduct::new(id, kind);
                if rng.gen_bool(0.9) {
                    p.publication_date = Some(random_date(rng, 2022, 2024));
                }
                if rng.gen_bool(0.85) {
                    p.best_access_right = Some(AccessRight::new(*LABELS.choose(rng).unwrap()));
                }
                for k in 0..rng.gen_range(0..3) {
                    p.pids.push(Pid::new(if k == 0 { "doi" } else { "pmid" }, &format!("10.{i}/{k}")).unwrap());
                }
                Entity::Product(p)
            }
            5..=7 => {
                let mut o = Organization::new(id);
                if rng.gen_bool(0.8) {
                    o.country_code = Some((*COUNTRIES.choose(rng).unwrap()).into());
                }
                if rng.gen_bool(0.5) {
                    o.legal_short_name = Some((*ORG_NAMES.choose(rng).unwrap()).into());
                }
                if rng.gen_bool(0.5) {
                    o.legal_name = Some(format!("Organization {}", rng.gen_range(0..6)));
                }
                Entity::Organization(o)
            }
            8 => Entity::Project(NamedEntity::new(id)),
            _ => {
                if rng.gen_bool(0.5) {
                    Entity::Datasource(NamedEntity::new(id))
                } else {
                    Entity::Community(NamedEntity::new(id))
                }
            }
        };
        entities.push(e);
    }
    let m = rng.gen_range(0..=max_relations);
    let dups = rng.gen_range(0..=m / 20);
    let mut relations = Vec::with_capacity(m);
    let endpoint = |rng: &mut StdRng| -> String {
        if entities.is_empty() || rng.gen_bool(0.05) {
            format!("ghost{}", rng.gen_range(0..20))
        } else {
            entities.choose(rng).unwrap().id().as_str().to_string()
        }
    };
    let ids_where = |f: fn(&Entity) -> bool| -> Vec<String> {
        entities.iter().filter(|e| f(e)).map(|e| e.id().as_str().to_string()).collect()
    };
    let orgs = ids_where(|e| matches!(e, Entity::Organization(_)));
    let products = ids_where(|e| matches!(e, Entity::Product(_)));
    let projects = ids_where(|e| matches!(e, Entity::Project(_)));
    // Most relations connect the kinds their name implies, so the queries
    // see joins that actually match.
    let typed = |rng: &mut StdRng, pool: &[String]| -> String {
        match pool.choose(rng) {
            Some(id) if rng.gen_bool(0.8) => id.clone(),
            _ => endpoint(rng),
        }
    };
    for _ in 0..m - dups {
        let name = *REL_NAMES.choose(rng).unwrap();
        let (s, t) = match name {
            "IsCitedBy" | "Cites" => (typed(rng, &products), typed(rng, &products)),
            "isAuthorInstitutionOf" => (typed(rng, &orgs), typed(rng, &products)),
            "isParticipant" => (typed(rng, &orgs), typed(rng, &projects)),
            _ => (endpoint(rng), endpoint(rng)),
        };
        relations.push(Relation::new(&s, &t, name).unwrap());
    }
    // Duplicate a few relations to exercise bag semantics.
    for _ in 0..dups {
        if let Some(r) = relations.choose(rng).cloned() {
            relations.push(r);
        }
    }
    RawGraph { entities, relations }
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
