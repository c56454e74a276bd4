mod common;

use common::*;
use johnson_core::connectivity::{analyze_connectivity, connected_without, local_connectivity};
use johnson_core::graph::{build_johnson, build_layer_graph, degree_stats, is_connected, square};
use johnson_core::search::OutcomeKind;
use johnson_core::verify::{verify_panconnected, verify_pancyclic, Verdict, VerifyOptions};
use johnson_core::{Graph, VertexId};

#[test]
fn local_connectivity_matches_separator_enumeration() {
    for (name, g) in corpus() {
        let n = g.vertex_count() as VertexId;
        for u in 0..n {
            for v in u + 1..n {
                let fast = local_connectivity(&g, u, v).unwrap();
                let slow = brute_local_connectivity(&g, u as usize, v as usize);
                assert_eq!(fast, slow, "{name}: pair ({u}, {v})");
            }
        }
    }
}

#[test]
fn kappa_and_cut_match_enumeration() {
    for (name, g) in corpus() {
        let r = analyze_connectivity(&g).unwrap();
        assert_eq!(r.kappa, brute_kappa(&g), "{name}");
        assert!(r.kappa <= r.delta, "{name}");
        if let Some(cut) = &r.cut {
            assert_eq!(cut.len(), r.kappa, "{name}");
            assert!(!connected_without(&g, cut), "{name}: cut does not disconnect");
        }
    }
}

#[test]
fn panconnected_matches_path_enumeration() {
    for (name, g) in corpus() {
        let Some(missing) = brute_missing_lengths(&g) else {
            assert!(!is_connected(&g).unwrap(), "{name}");
            assert!(verify_panconnected(&g, VerifyOptions::default()).is_err(), "{name}");
            continue;
        };
        let r = verify_panconnected(&g, VerifyOptions::default()).unwrap();
        let expected = if missing.is_empty() { Verdict::Pass } else { Verdict::Fail };
        assert_eq!(r.verdict, expected, "{name}");
        let reported: Vec<(usize, usize, usize)> = r
            .counterexamples
            .iter()
            .map(|c| {
                assert_eq!(c.outcome, OutcomeKind::NotFound, "{name}");
                (c.u as usize, c.v as usize, c.length)
            })
            .collect();
        assert_eq!(reported, missing, "{name}");
        assert_eq!(r.stats.witnesses_revalidated, r.stats.lengths_checked - missing.len(), "{name}");
    }
}

#[test]
fn pancyclic_matches_cycle_enumeration() {
    for (name, g) in corpus() {
        if g.vertex_count() > 10 {
            continue;
        }
        let r = verify_pancyclic(&g, VerifyOptions::default()).unwrap();
        let found: Vec<usize> = r
            .lengths
            .iter()
            .filter(|c| c.outcome == OutcomeKind::Found)
            .map(|c| c.length)
            .collect();
        let expected: Vec<usize> = brute_cycle_lengths(&g).into_iter().collect();
        assert_eq!(found, expected, "{name}");
    }
}

#[test]
fn johnson_edge_counts_match_pair_enumeration() {
    for n in 2..=10 {
        for m in 1..n {
            let g = build_johnson(n, m).unwrap();
            assert_eq!(g.edge_count() as u64, brute_johnson_edges(n, m), "J({n},{m})");
        }
    }
}

#[test]
fn square_contains_graph_and_only_distance_two_pairs() {
    for (name, g) in corpus() {
        let g2 = square(&g);
        let n = g.vertex_count() as VertexId;
        for u in 0..n {
            for v in u + 1..n {
                let via = g.neighbors(u).iter().any(|&w| g.has_edge(w, v));
                assert_eq!(g2.has_edge(u, v), g.has_edge(u, v) || via, "{name} ({u},{v})");
            }
        }
    }
}

#[test]
fn kappa_never_exceeds_min_degree_on_family_graphs() {
    let mut graphs: Vec<Graph> = Vec::new();
    for n in 3..=7 {
        for m in 1..n {
            graphs.push(build_johnson(n, m).unwrap());
        }
        for m in (1..n).filter(|&m| 2 * m < n) {
            graphs.push(build_layer_graph(n, m).unwrap());
        }
    }
    for g in graphs {
        let r = analyze_connectivity(&g).unwrap();
        assert_eq!(r.delta, degree_stats(&g).min);
        assert_eq!(r.kappa, r.delta, "{}", g.meta().name());
    }
}
