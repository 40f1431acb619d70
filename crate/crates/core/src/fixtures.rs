//! Small hand-checkable graphs used by tests and documentation.

use alloc::vec;

use crate::model::{AccessRight, Entity, EntityId, NamedEntity, Organization, Pid, ProductKind, Relation, ResearchProduct};
use crate::store::GraphStore;

fn id(s: &str) -> EntityId {
    EntityId::new(s).expect("fixture ids are non-empty")
}

fn publication(i: &str, access: &str, date: &str) -> ResearchProduct {
    let mut p = ResearchProduct::new(id(i), ProductKind::Publication);
    p.best_access_right = Some(AccessRight::new(access));
    p.publication_date = Some(date.parse().expect("fixture dates are valid"));
    p
}

fn org(i: &str, country: &str, short: Option<&str>, long: Option<&str>) -> Organization {
    Organization {
        id: id(i),
        legal_name: long.map(Into::into),
        legal_short_name: short.map(Into::into),
        country_code: Some(country.into()),
    }
}

/// Three publications, three organizations and one project.
///
/// P1 (OPEN, 2023-07-01, doi:10.1/a), P2 (CLOSED, 2023-08-01), P3 (EMBARGO,
/// 2024-01-01); O1 (IT, "CNR"), O2 (FR, "CNRS"), O3 (IT, unnamed); J1.
/// P1 and P2 are cited twice and once; O1 and O2 are affiliated with P1, O1
/// with P2; all three organizations participate in J1.
pub fn fixture_a() -> GraphStore {
    let mut p1 = publication("P1", "OPEN", "2023-07-01");
    p1.pids.push(Pid::new("doi", "10.1/a").expect("non-empty"));
    let entities = vec![
        Entity::Product(p1),
        Entity::Product(publication("P2", "CLOSED", "2023-08-01")),
        Entity::Product(publication("P3", "EMBARGO", "2024-01-01")),
        Entity::Organization(org("O1", "IT", Some("CNR"), None)),
        Entity::Organization(org("O2", "FR", None, Some("CNRS"))),
        Entity::Organization(org("O3", "IT", None, None)),
        Entity::Project(NamedEntity::new(id("J1"))),
    ];
    let rel = |s: &str, t: &str, n: &str| Relation::new(s, t, n).expect("fixture relations are valid");
    let relations = vec![
        rel("P1", "P2", "IsCitedBy"),
        rel("P1", "P3", "IsCitedBy"),
        rel("P2", "P3", "IsCitedBy"),
        rel("O1", "P1", "isAuthorInstitutionOf"),
        rel("O1", "P2", "isAuthorInstitutionOf"),
        rel("O2", "P1", "isAuthorInstitutionOf"),
        rel("O1", "J1", "isParticipant"),
        rel("O2", "J1", "isParticipant"),
        rel("O3", "J1", "isParticipant"),
    ];
    GraphStore::from_parts(entities, relations)
}
