use std::collections::HashSet;

use fasncl_core::fs::{enumerate_component, explore, Configuration, FasInstance, SearchMode};
use fasncl_core::ncl::{NclEdge, NclGraph, VertexKind};
use fasncl_core::{NclError, SimpleGraph, Status};
use fasncl_gadgets::assembly::color_classing;
use fasncl_gadgets::{build_people_graph, Color, GadgetKind};
use fasncl_verify::{brute_force_fs, equivalence_test, gadget_suite, instances, BruteMode, PairSource, VerifyConfig};
use proptest::prelude::*;

fn instance(n: usize, x_edges: &[bool], colors: &[usize]) -> (FasInstance, Vec<Color>) {
    let mut edges = Vec::new();
    let mut k = 0;
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            if x_edges[k] {
                edges.push((a, b));
            }
            k += 1;
        }
    }
    let colors: Vec<Color> = colors[..n].iter().map(|&c| Color::ALL[c]).collect();
    let inst = FasInstance::new(SimpleGraph::new(n, edges).unwrap(), build_people_graph(&colors)).unwrap();
    (inst, colors)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn engine_matches_oracle_in_both_modes(
        n in 1usize..=6,
        x_edges in prop::collection::vec(any::<bool>(), 15),
        colors in prop::collection::vec(0usize..8, 6),
        shuffle in Just((0..6u32).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let (inst, colors) = instance(n, &x_edges, &colors);
        let from = Configuration::new(shuffle.into_iter().filter(|&p| (p as usize) < n).collect()).unwrap();

        let labeled = brute_force_fs(&inst, &from, BruteMode::Labeled, 1_000_000).unwrap();
        let report = enumerate_component(&inst, &from, &SearchMode::Labeled, 1_000_000).unwrap();
        prop_assert_eq!(report.status, Status::Unreachable);
        prop_assert_eq!(report.size, labeled.len());

        let cc = color_classing(&colors);
        let quotient = brute_force_fs(&inst, &from, BruteMode::Quotient(&cc), 1_000_000).unwrap();
        let comp = explore(&inst, &from, &SearchMode::Quotient(cc.clone()), 1_000_000).unwrap();
        let engine: HashSet<Vec<u32>> = comp.states().collect();
        prop_assert_eq!(&engine, &quotient);

        // Forgetting labels never loses reachability.
        for state in &labeled {
            let pattern: Vec<u32> = state.iter().map(|&p| cc.as_slice()[p as usize]).collect();
            prop_assert!(quotient.contains(&pattern));
        }
    }
}

#[test]
fn edge_gadget_suites_pass() {
    for kind in [GadgetKind::BlueEdge, GadgetKind::RedEdge] {
        let r = gadget_suite(kind, 1_000_000).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}

#[test]
fn vertex_gadget_behaviour_checks() {
    let or = gadget_suite(GadgetKind::OrVertex, 1_000_000).unwrap();
    for name in ["never_three_outward", "any_two_outward", "outward_sets_match_vertex_rule", "interiors_derived"] {
        assert!(or.check(name).unwrap().passed, "{}", or.to_text());
    }
    let and = gadget_suite(GadgetKind::AndVertex, 1_000_000).unwrap();
    for name in [
        "blue_and_both_reds_never_outward",
        "blue_outward_excludes_red_outward",
        "mode_two_reds_released",
        "mode_blue_released",
        "outward_sets_match_vertex_rule",
    ] {
        assert!(and.check(name).unwrap().passed, "{}", and.to_text());
    }
}

#[test]
fn sealed_vertex_gadgets_keep_internal_motion() {
    // Free heavy tokens sit next to light locations inside both vertex
    // gadgets, so sealing the ports leaves them room to move.
    for kind in [GadgetKind::OrVertex, GadgetKind::AndVertex] {
        let r = gadget_suite(kind, 1_000_000).unwrap();
        assert!(!r.check("sealed_rigidity").unwrap().passed);
    }
}

#[test]
fn sampled_reports_are_reproducible() {
    let cfg = VerifyConfig::default();
    let source = PairSource::Sampled { count: cfg.equivalence.samples, seed: cfg.equivalence.seed };
    let a = equivalence_test(&instances::k4_or(), "k4-or", source, &cfg).unwrap();
    let b = equivalence_test(&instances::k4_or(), "k4-or", source, &cfg).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_text(), b.to_text());
    assert!(a.passed(), "{}", a.to_text());
    assert!(a.completed >= cfg.equivalence.min_completed_pairs);
}

#[test]
fn tiny_cap_marks_pairs_skipped() {
    let mut cfg = VerifyConfig::default();
    cfg.search.max_states = 3;
    let r = equivalence_test(&instances::triple_pair(), "triple-pair", PairSource::Exhaustive, &cfg).unwrap();
    assert!(!r.skipped.is_empty());
    assert_eq!(r.completed + r.skipped.len(), r.pairs_tested);
    assert_eq!(r.agreements, r.completed);
    assert!(!r.passed());
}

#[test]
fn lone_and_vertex_is_not_a_closed_graph() {
    let e = NclGraph::new(vec![VertexKind::And], vec![NclEdge::new(0, 0, 1)]).unwrap_err();
    assert!(matches!(e, NclError::Loop { .. }));
    let e = NclGraph::new(vec![VertexKind::And, VertexKind::Or], vec![NclEdge::new(0, 1, 2)]).unwrap_err();
    assert!(matches!(e, NclError::Degree { .. }));
}
