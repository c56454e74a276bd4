//! Acceptance suite: one PASS/FAIL line per criterion on stdout, then a
//! single assertion over all of them.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use johnson_cli::report::{Counterexample, Report};
use johnson_core::connectivity::{analyze_connectivity, connected_without, is_k_connected, vertex_connectivity};
use johnson_core::edgelist::{parse_edge_list, to_edge_list};
use johnson_core::graph::{build_johnson, build_layer_graph, degree_stats, is_connected, square};
use johnson_core::morphism::{
    certify_bijection, check_edge_transitive, check_vertex_transitive, default_generators, layer_square_candidate,
};
use johnson_core::search::OutcomeKind;
use johnson_core::subset::binomial;
use johnson_core::verify::{
    verify_cycle_lengths, verify_hamilton_connected, verify_panconnected, verify_pancyclic, PathCounterexample,
    Verdict, VerifyOptions,
};
use johnson_core::witness::{exhaustive_cycle_exists, exhaustive_path_exists, validate_cycle};
use johnson_core::{Graph, VertexId};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn panconnect(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_panconnect"));
    cmd.args(args).env_remove("PANCONNECT_JOBS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// `(n, m)` with `3 <= n <= 10`, `1 <= m < n/2`, `C(n+1, m+1) <= 500`.
fn layer_grid() -> Vec<(u32, u32)> {
    (3..=10u32)
        .flat_map(|n| (1..n).filter(move |&m| 2 * m < n).map(move |m| (n, m)))
        .filter(|&(n, m)| binomial(n + 1, m + 1) <= 500)
        .collect()
}

fn headline_graphs() -> Vec<Graph> {
    [(4, 2), (5, 2), (6, 2), (6, 3), (7, 2)]
        .into_iter()
        .map(|(n, m)| build_johnson(n, m).unwrap())
        .collect()
}

fn fixture_match() {
    let b31 = build_layer_graph(3, 1).unwrap();
    assert_eq!(b31.vertex_count(), 6);
    assert!(is_connected(&b31).unwrap());
    assert!((0..6).all(|v| b31.degree(v) == 2));
    // a connected 2-regular graph on 6 vertices is C6; walk it to be sure
    let mut order = vec![0];
    while order.len() < 6 {
        let last = *order.last().unwrap();
        let next = *b31.neighbors(last).iter().find(|x| !order.contains(x)).unwrap();
        order.push(next);
    }
    assert!(b31.has_edge(order[5], order[0]));

    let b51 = build_layer_graph(5, 1).unwrap();
    assert_eq!((b51.vertex_count(), b51.edge_count()), (15, 20));
    let mut degrees: Vec<usize> = (0..15).map(|v| b51.degree(v)).collect();
    degrees.sort_unstable();
    assert_eq!(degrees, [vec![2; 10], vec![4; 5]].concat());

    let run = panconnect(&["generate", "--family", "layer", "--n", "5", "--m", "1"], &[]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    assert_eq!(run.stdout, to_edge_list(&b51));
    let parsed = parse_edge_list(&run.stdout).unwrap();
    assert_eq!((parsed.vertex_count(), parsed.edge_count()), (15, 20));
}

fn layer_square_sweep() {
    for (n, m) in layer_grid() {
        let (source, target, map) = layer_square_candidate(n, m).unwrap();
        assert_eq!(source.edge_count() as u64, common::brute_johnson_edges(n + 1, m + 1));
        for (u, v) in source.edges() {
            assert!(target.has_edge(map[u as usize], map[v as usize]), "B({n},{m}): ({u},{v})");
        }
        let b = certify_bijection(&source, &target, map).unwrap();
        assert!(b.is_certified(), "B({n},{m})");
        assert!(b.replay(&source, &target));
    }
    for (n, m, vertices, edges) in [("3", "1", 6, 12), ("4", "1", 10, 30), ("9", "2", 120, 1260)] {
        let run = panconnect(&["iso", "--n", n, "--m", m], &[]);
        assert_eq!(run.code, 0, "{}", run.stderr);
        let json: serde_json::Value = serde_json::from_str(&run.stdout).unwrap();
        assert_eq!(json["certified"], true);
        assert_eq!(json["refutation"], serde_json::Value::Null);
        assert_eq!(json["target"]["vertices"], vertices);
        assert_eq!(json["target"]["edges"], edges);
        assert_eq!(json["source"]["edges"], edges);
    }
}

fn connectivity_values() {
    for (n, m) in layer_grid() {
        let g = build_layer_graph(n, m).unwrap();
        assert_eq!(degree_stats(&g).min, (m + 1) as usize, "B({n},{m})");
        assert_eq!(vertex_connectivity(&g).unwrap(), (m + 1) as usize, "B({n},{m})");
    }
    for n in 2..=7u32 {
        for m in 1..n {
            let g = build_johnson(n, m).unwrap();
            let expected = (m * (n - m)) as usize;
            assert_eq!(degree_stats(&g).min, expected);
            assert_eq!(vertex_connectivity(&g).unwrap(), expected, "J({n},{m})");
        }
    }
    let run = panconnect(
        &["verify", "--family", "layer", "--n", "6", "--m", "2", "--check", "connectivity"],
        &[],
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report: Report = serde_json::from_str(&run.stdout).unwrap();
    let c = &report.checks[0];
    assert_eq!(c.verdict, Verdict::Pass);
    assert_eq!((c.details["kappa"].as_u64(), c.details["delta"].as_u64()), (Some(3), Some(3)));
}

fn headline_panconnected() {
    for g in headline_graphs() {
        let r = verify_panconnected(&g, VerifyOptions::default()).unwrap();
        let name = g.meta().name();
        assert_eq!(r.verdict, Verdict::Pass, "{name}");
        assert!(r.counterexamples.is_empty(), "{name}");
        let v = g.vertex_count();
        assert_eq!(r.stats.pairs, v * (v - 1) / 2, "{name}");
        for p in &r.pairs {
            assert_eq!(p.lengths(), p.distance..=v - 1, "{name}");
            assert!(p.outcomes.iter().all(|&k| k == OutcomeKind::Found), "{name}");
        }
        assert_eq!(r.stats.witnesses_revalidated, r.stats.lengths_checked, "{name}");
    }
    let run = panconnect(
        &["verify", "--family", "johnson", "--n", "5", "--m", "2", "--check", "panconnected"],
        &[],
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
}

fn implication_suite() {
    let mut graphs = headline_graphs();
    graphs.extend(common::corpus().into_iter().map(|(_, g)| g));
    graphs.push(square(&build_layer_graph(5, 2).unwrap()));
    let mut passes = 0;
    for g in graphs {
        if !is_connected(&g).unwrap() {
            continue;
        }
        let name = g.meta().name();
        let pan = verify_panconnected(&g, VerifyOptions::default()).unwrap();
        if pan.verdict != Verdict::Pass {
            continue;
        }
        passes += 1;
        assert!(pan.hamilton_rows_pass(), "{name}");
        assert_eq!(pan.closable_cycle_lengths(), (3..=g.vertex_count()).collect::<Vec<_>>(), "{name}");
        let ham = verify_hamilton_connected(&g, VerifyOptions::default()).unwrap();
        assert_eq!(ham.verdict, Verdict::Pass, "{name}");
        let cyc = verify_pancyclic(&g, VerifyOptions::default()).unwrap();
        assert_eq!(cyc.verdict, Verdict::Pass, "{name}");
    }
    assert!(passes >= 10, "only {passes} panconnected instances");
}

fn negative_controls() {
    let c6 = Graph::cycle(6).unwrap();
    let opts = VerifyOptions::default();
    let pan = verify_panconnected(&c6, opts).unwrap();
    assert_eq!(pan.verdict, Verdict::Fail);
    let antipodal = PathCounterexample {
        u: 0,
        v: 3,
        length: 4,
        outcome: OutcomeKind::NotFound,
    };
    assert!(pan.counterexamples.contains(&antipodal));
    for c in &pan.counterexamples {
        assert!(!exhaustive_path_exists(&c6, c.u, c.v, c.length));
    }
    let cyc = verify_pancyclic(&c6, opts).unwrap();
    assert_eq!(cyc.verdict, Verdict::Fail);
    assert_eq!(cyc.counterexamples.first().map(|c| c.length), Some(3));
    for c in &cyc.counterexamples {
        assert!(!exhaustive_cycle_exists(&c6, c.length));
    }
    let ham = verify_hamilton_connected(&c6, opts).unwrap();
    assert_eq!(ham.verdict, Verdict::Fail);
    for c in &ham.counterexamples {
        assert!(!exhaustive_path_exists(&c6, c.u, c.v, c.length));
    }
    let p4 = Graph::path(4).unwrap();
    assert!(!is_k_connected(&p4, 2).unwrap());
    let cut = analyze_connectivity(&p4).unwrap().cut.expect("P4 has a cut");
    assert_eq!(cut.len(), 1);
    assert!(!connected_without(&p4, &cut));
    assert_eq!(common::brute_kappa(&p4), 1);

    // the same controls through the binary, replayed from files
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("c6.txt");
    let report = dir.path().join("c6.json");
    std::fs::write(&graph, to_edge_list(&c6)).unwrap();
    let (gp, rp) = (path_str(&graph), path_str(&report));
    let checks = "panconnected,pancyclic,hamilton-connected";
    let run = panconnect(&["verify", "--graph", gp, "--check", checks, "--out", rp], &[]);
    assert_eq!(run.code, 1, "{}", run.stderr);
    let parsed: Report = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(parsed.checks.iter().all(|c| c.verdict == Verdict::Fail && c.counterexample.is_some()));
    let Some(Counterexample::NoPath { paths }) = &parsed.checks[0].counterexample else {
        panic!("panconnected counterexample kind");
    };
    assert!(paths.iter().any(|p| (p.u, p.v, p.length) == (0, 3, 4)));
    let Some(Counterexample::NoCycle { lengths }) = &parsed.checks[1].counterexample else {
        panic!("pancyclic counterexample kind");
    };
    assert_eq!(lengths, &vec![3, 4, 5]);
    let replay = panconnect(&["replay", "--graph", gp, "--report", rp], &[]);
    assert_eq!(replay.code, 0, "{}{}", replay.stdout, replay.stderr);
    assert!(replay.stdout.contains("replay: 4 confirmed, 0 rejected"), "{}", replay.stdout);
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn transitivity() {
    for n in 2..=10u32 {
        for m in 1..n {
            if binomial(n, m) > 500 {
                continue;
            }
            let g = build_johnson(n, m).unwrap();
            let r = check_vertex_transitive(&g, &default_generators(&g).unwrap()).unwrap();
            assert!(r.transitive, "J({n},{m})");
        }
    }
    for (n, m) in layer_grid() {
        let g = build_layer_graph(n, m).unwrap();
        let gens = default_generators(&g).unwrap();
        assert!(check_edge_transitive(&g, &gens).unwrap(), "B({n},{m})");
        let vt = check_vertex_transitive(&g, &gens).unwrap();
        if n == 2 * m + 1 {
            assert!(vt.transitive, "B({n},{m})");
            assert!(degree_stats(&g).regular);
        } else {
            assert!(!degree_stats(&g).regular, "B({n},{m})");
            assert!(vt.refuted() && !vt.transitive, "B({n},{m})");
        }
    }
    let run = panconnect(
        &["verify", "--family", "layer", "--n", "5", "--m", "2", "--check", "transitivity"],
        &[],
    );
    assert_eq!(run.code, 0, "{}", run.stderr);
    let report: Report = serde_json::from_str(&run.stdout).unwrap();
    assert_eq!(report.checks[0].details["vertex_transitive"], true);
}

fn middle_levels_hamilton_cycle() {
    let g = build_layer_graph(5, 2).unwrap();
    let r = verify_cycle_lengths(&g, 20..=20, VerifyOptions::default()).unwrap();
    assert_eq!(r.verdict, Verdict::Pass);
    let c = r.length(20).unwrap();
    let w = c.witness.as_ref().expect("witness kept");
    assert_eq!(validate_cycle(&g, w, 20), Ok(()));
    let mut seen = w.vertices.clone();
    seen.sort_unstable();
    assert_eq!(seen, (0..20).collect::<Vec<VertexId>>());
}

fn oracle_equivalence() {
    for (name, g) in common::corpus() {
        assert!(g.vertex_count() <= 12);
        let n = g.vertex_count() as VertexId;
        for u in 0..n {
            for v in u + 1..n {
                assert_eq!(
                    johnson_core::connectivity::local_connectivity(&g, u, v).unwrap(),
                    common::brute_local_connectivity(&g, u as usize, v as usize),
                    "{name} ({u},{v})"
                );
            }
        }
        match common::brute_missing_lengths(&g) {
            None => assert!(verify_panconnected(&g, VerifyOptions::default()).is_err(), "{name}"),
            Some(missing) => {
                let r = verify_panconnected(&g, VerifyOptions::default()).unwrap();
                let got: Vec<_> = r
                    .counterexamples
                    .iter()
                    .map(|c| (c.u as usize, c.v as usize, c.length))
                    .collect();
                assert_eq!(got, missing, "{name}");
                assert_eq!(r.verdict == Verdict::Pass, missing.is_empty(), "{name}");
            }
        }
    }
}

fn determinism() {
    let dir = tempfile::tempdir().unwrap();
    let configs: [&[&str]; 3] = [
        &[
            "sweep", "--family", "johnson", "--n-min", "4", "--n-max", "6",
            "--check", "panconnected,connectivity,transitivity,pancyclic,iso35",
        ],
        &["sweep", "--family", "layer", "--n-min", "3", "--n-max", "7", "--check", "connectivity,edge-transitive,iso35"],
        &[
            "sweep", "--family", "johnson", "--n-min", "4", "--n-max", "7", "--check", "panconnected",
            "--symmetry-reduced", "--format", "json",
        ],
    ];
    for (i, config) in configs.iter().enumerate() {
        let mut outputs = Vec::new();
        for (j, jobs) in ["1", "1", "4", "4"].iter().enumerate() {
            let out = dir.path().join(format!("{i}-{j}"));
            let mut args = config.to_vec();
            args.extend(["--out", path_str(&out)]);
            let run = if j == 3 {
                panconnect(&args, &[("PANCONNECT_JOBS", jobs)])
            } else {
                args.extend(["--jobs", jobs]);
                panconnect(&args, &[])
            };
            assert_eq!(run.code, 0, "{config:?}: {}", run.stderr);
            outputs.push(std::fs::read(&out).unwrap());
        }
        assert!(!outputs[0].is_empty());
        assert!(outputs.iter().all(|o| o == &outputs[0]), "{config:?} differs between runs");
    }
    let verify: &[&str] = &[
        "verify", "--family", "johnson", "--n", "6", "--m", "3", "--check",
        "panconnected,connectivity,hamilton-connected", "--witnesses",
    ];
    let a = panconnect(verify, &[("PANCONNECT_JOBS", "1")]);
    let b = panconnect(verify, &[("PANCONNECT_JOBS", "4")]);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn()); 10] = [
        ("fixture match: B(3,1) = C6, B(5,1) counts", fixture_match),
        ("B(n,m)^2 -> J(n+1,m+1) certified on the grid", layer_square_sweep),
        ("kappa(B(n,m)) = m+1, kappa(J(n,m)) = m(n-m)", connectivity_values),
        ("J(n,m) panconnected on the headline instances", headline_panconnected),
        ("panconnected implies Hamilton-connected and pancyclic", implication_suite),
        ("negative controls C6 and P4 with replay", negative_controls),
        ("vertex/edge transitivity and regularity", transitivity),
        ("Hamilton cycle in B(5,2)", middle_levels_hamilton_cycle),
        ("connectivity and panconnectedness match brute force", oracle_equivalence),
        ("sweep and verify output is byte-identical across runs and jobs", determinism),
    ];
    let mut failed = Vec::new();
    let mut stdout = std::io::stdout();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check));
        let status = if result.is_ok() { "PASS" } else { "FAIL" };
        // written to the raw handle so the lines show without --nocapture
        writeln!(
            stdout,
            "criterion {:>2}: {status} {name} ({:.2}s)",
            i + 1,
            started.elapsed().as_secs_f64()
        )
        .unwrap();
        if result.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
