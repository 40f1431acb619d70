mod support;

use std::collections::BTreeMap;

use oagraph_core::metrics::{
    access_breakdown_by_country, citation_counts, co_participation_edges, normalize_weights, oa_breakdown_by_org_year,
    CoParticipationEdge, CoParticipationMode,
};
use oagraph_core::subset::{expand_entities, extract_subset, select_seed_products};
use oagraph_core::{
    classify_access, display_name, AccessClass, AccessRight, DateWindow, EntityId, GraphStore, Organization,
};
use proptest::prelude::*;
use support::oracle;
use support::random::{random_graph, random_window, rng, RawGraph};

fn store_of(g: &RawGraph) -> GraphStore {
    GraphStore::from_parts(g.entities.clone(), g.relations.clone())
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

fn edges_as_rows(edges: &[CoParticipationEdge]) -> Vec<oracle::EdgeRow> {
    edges.iter().map(|e| (e.left.clone(), e.right.clone(), e.weight)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn indexes_hold_the_master_multiset(seed in any::<u64>()) {
        let g = random_graph(&mut rng(seed), 200, 1000);
        let s = store_of(&g);
        let master = sorted(g.relations.clone());
        prop_assert_eq!(sorted(s.relations().to_vec()), master.clone());
        prop_assert_eq!(sorted(s.relations_by_target().cloned().collect()), master.clone());
        prop_assert_eq!(sorted(s.relations_by_name().cloned().collect()), master.clone());
        let mut via_lookup = Vec::new();
        let mut sources: Vec<&str> = g.relations.iter().map(|r| r.source.as_str()).collect();
        sources.sort();
        sources.dedup();
        for src in sources {
            via_lookup.extend(s.relations_from(src).iter().cloned());
        }
        prop_assert_eq!(sorted(via_lookup), master);
    }

    #[test]
    fn subset_matches_three_pass_oracle(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 200, 1000);
        let w = random_window(&mut r);
        let (out, manifest) = extract_subset(&store_of(&g), &w);
        let (ents, rels) = oracle::subset(&g, &w);
        let mut got: Vec<_> = out.entities().collect();
        got.sort_by(|a, b| a.id().cmp(b.id()));
        prop_assert_eq!(got, ents);
        prop_assert_eq!(out.relations().to_vec(), rels);
        prop_assert_eq!(manifest.counts, out.stats());
        prop_assert_eq!(out.dangling_relations(), 0);
    }

    #[test]
    fn subset_is_idempotent_and_product_bounded(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 200, 1000);
        let w = random_window(&mut r);
        let (once, _) = extract_subset(&store_of(&g), &w);
        for p in once.products() {
            prop_assert!(w.contains(p.publication_date.unwrap()));
        }
        for e in once.entities().filter(|e| !e.kind().is_product()) {
            let id = e.id().as_str();
            let linked = once.relations_from(id).iter().any(|r| once.product(r.target.as_str()).is_some())
                || once.relations_to(id).any(|r| once.product(r.source.as_str()).is_some());
            prop_assert!(linked, "{id} has no relation to a seed product");
        }
        let (twice, _) = extract_subset(&once, &w);
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn enlarging_the_window_never_shrinks_selection(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, 200, 600);
        let w = random_window(&mut r);
        let s = store_of(&g);
        let other = random_window(&mut r);
        let wide = DateWindow::new(w.from().min(other.from()), w.to().max(other.to())).unwrap();
        let narrow_seed = select_seed_products(&s, &w);
        let wide_seed = select_seed_products(&s, &wide);
        prop_assert!(narrow_seed.is_subset(&wide_seed));
        prop_assert!(expand_entities(&s, &narrow_seed).is_subset(&expand_entities(&s, &wide_seed)));
        let (a, _) = extract_subset(&s, &w);
        let (b, _) = extract_subset(&s, &wide);
        for e in a.entities() {
            prop_assert!(b.contains(e.id().as_str()));
        }
    }

    #[test]
    fn metrics_match_nested_loop_oracles(seed in any::<u64>()) {
        let g = random_graph(&mut rng(seed), 200, 1000);
        let s = store_of(&g);

        let got: Vec<oracle::CitationRow> = citation_counts(&s)
            .into_iter()
            .map(|c| (c.product_id.to_string(), c.canonical_pid.map(|p| p.to_string()), c.count))
            .collect();
        prop_assert_eq!(got, oracle::citation_counts(&g));

        let got: Vec<(String, oracle::Tally)> = access_breakdown_by_country(&s)
            .into_iter()
            .map(|r| (r.key, [r.counts.total, r.counts.open, r.counts.embargo, r.counts.closed, r.counts.other]))
            .collect();
        prop_assert_eq!(got, oracle::access_by_country(&g));

        let got: Vec<(oracle::OrgYearKey, oracle::Tally)> = oa_breakdown_by_org_year(&s)
            .into_iter()
            .map(|r| ((r.key.organization, r.key.year), [r.counts.total, r.counts.open, r.counts.embargo, r.counts.closed, r.counts.other]))
            .collect();
        prop_assert_eq!(got, oracle::oa_by_org_year(&g));

        prop_assert_eq!(edges_as_rows(&co_participation_edges(&s, CoParticipationMode::Distinct)), oracle::co_participation_distinct(&g));
        prop_assert_eq!(edges_as_rows(&co_participation_edges(&s, CoParticipationMode::PaperCompat)), oracle::co_participation_compat(&g));
    }

    #[test]
    fn metric_totals_are_consistent(seed in any::<u64>()) {
        let g = random_graph(&mut rng(seed), 200, 1000);
        let s = store_of(&g);

        let cited: u64 = citation_counts(&s).iter().map(|c| c.count).sum();
        let expected = s
            .relations_named("IsCitedBy")
            .filter(|r| s.product(r.source.as_str()).is_some_and(|p| p.kind == oagraph_core::ProductKind::Publication))
            .count() as u64;
        prop_assert_eq!(cited, expected);

        let total: u64 = access_breakdown_by_country(&s).iter().map(|r| r.counts.total).sum();
        let expected = s
            .relations_named("isAuthorInstitutionOf")
            .filter(|r| s.organization(r.source.as_str()).is_some_and(|o| o.country_code.is_some()))
            .filter(|r| s.product(r.target.as_str()).is_some())
            .count() as u64;
        prop_assert_eq!(total, expected);

        // Summing years per organization equals grouping by organization alone.
        let mut by_org: BTreeMap<Option<String>, u64> = BTreeMap::new();
        for row in oa_breakdown_by_org_year(&s) {
            *by_org.entry(row.key.organization).or_default() += row.counts.total;
        }
        let mut direct: BTreeMap<Option<String>, u64> = BTreeMap::new();
        for r in s.relations_named("isAuthorInstitutionOf") {
            if let (Some(o), Some(_)) = (s.organization(r.source.as_str()), s.product(r.target.as_str())) {
                *direct.entry(o.display_name().map(String::from)).or_default() += 1;
            }
        }
        prop_assert_eq!(by_org, direct);

        for e in co_participation_edges(&s, CoParticipationMode::Distinct) {
            prop_assert!(e.left < e.right);
            prop_assert!(e.weight >= 1);
        }
        for e in co_participation_edges(&s, CoParticipationMode::PaperCompat) {
            prop_assert!(e.left <= e.right);
        }
    }

    #[test]
    fn normalization_preserves_order_and_argmax(weights in prop::collection::vec(1u64..10_000, 1..50)) {
        let edges: Vec<CoParticipationEdge> = weights
            .iter()
            .enumerate()
            .map(|(i, w)| CoParticipationEdge { left: format!("A{i:02}"), right: format!("B{i:02}"), weight: *w })
            .collect();
        let norm = normalize_weights(&edges).unwrap();
        let max = *weights.iter().max().unwrap();
        for (i, a) in norm.iter().enumerate() {
            prop_assert!(a.normalized > 0.0 && a.normalized <= 1.0);
            prop_assert_eq!(a.normalized == 1.0, weights[i] == max);
            for b in &norm {
                prop_assert_eq!(a.edge.weight.cmp(&b.edge.weight), a.normalized.partial_cmp(&b.normalized).unwrap());
            }
        }
    }

    #[test]
    fn classify_access_partitions_labels(label in ".{0,12}") {
        let class = classify_access(Some(&AccessRight::new(label.clone())));
        let expected = match label.as_str() {
            "OPEN" => AccessClass::Open,
            "EMBARGO" => AccessClass::Embargo,
            "CLOSED" => AccessClass::Closed,
            _ => AccessClass::Other,
        };
        prop_assert_eq!(class, expected);
    }

    #[test]
    fn display_name_never_fabricates(short in proptest::option::of("[a-zA-Z ]{1,8}"), long in proptest::option::of("[a-zA-Z ]{1,8}")) {
        let org = Organization {
            id: EntityId::new("o").unwrap(),
            legal_name: long.clone(),
            legal_short_name: short.clone(),
            country_code: None,
        };
        let name = display_name(&org).map(String::from);
        prop_assert_eq!(name.clone(), short.clone().or(long.clone()));
        if let Some(n) = name {
            prop_assert!(Some(&n) == short.as_ref() || Some(&n) == long.as_ref());
        }
    }
}

#[test]
fn store_determinism_under_input_order() {
    let g = random_graph(&mut rng(7), 200, 1000);
    let a = store_of(&g);
    let mut rels = g.relations.clone();
    rels.reverse();
    let mut ents = g.entities.clone();
    ents.reverse();
    let b = GraphStore::from_parts(ents, rels);
    assert_eq!(a, b);
}
