//! Independent re-checking of a report against an edge-list file.
//!
//! Nothing here calls the path search or the max-flow code: non-existence
//! claims are replayed by plain enumeration, witnesses against adjacency.

use johnson_core::connectivity::connected_without;
use johnson_core::graph::degree_stats;
use johnson_core::morphism::layer_square_candidate;
use johnson_core::verify::Verdict;
use johnson_core::witness::{
    exhaustive_cycle_exists, exhaustive_path_exists, validate_cycle, validate_path, CycleWitness, PathWitness,
};
use johnson_core::{Graph, VertexId};
use serde::Deserialize;

use crate::report::{CheckReport, Counterexample, Report, SCHEMA};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayItem {
    pub check: String,
    pub what: String,
    pub confirmed: bool,
    pub note: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReplaySummary {
    pub items: Vec<ReplayItem>,
}

impl ReplaySummary {
    pub fn all_confirmed(&self) -> bool {
        self.items.iter().all(|i| i.confirmed)
    }

    pub fn confirmed(&self) -> usize {
        self.items.iter().filter(|i| i.confirmed).count()
    }

    fn push(&mut self, check: &str, what: impl Into<String>, result: Result<(), String>) {
        let (confirmed, note) = match result {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e),
        };
        self.items.push(ReplayItem {
            check: check.to_string(),
            what: what.into(),
            confirmed,
            note,
        });
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            let status = if i.confirmed { "confirmed" } else { "REJECTED" };
            out.push_str(&format!("{} {}: {}", i.check, i.what, status));
            if !i.note.is_empty() {
                out.push_str(&format!(" ({})", i.note));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "replay: {} confirmed, {} rejected\n",
            self.confirmed(),
            self.items.len() - self.confirmed()
        ));
        out
    }
}

fn check_vertex(g: &Graph, x: VertexId, label: Option<&str>) -> Result<(), String> {
    if x as usize >= g.vertex_count() {
        return Err(format!("vertex {x} is not in the graph"));
    }
    match label {
        Some(l) if g.label(x).to_string() != l => Err(format!("vertex {x} is {} in the graph, {l} in the report", g.label(x))),
        _ => Ok(()),
    }
}

fn replay_counterexample(g: &Graph, c: &Counterexample) -> Result<(), String> {
    let count = g.vertex_count();
    match c {
        Counterexample::NoPath { paths } => {
            if paths.is_empty() {
                return Err("no paths listed".into());
            }
            for p in paths {
                check_vertex(g, p.u, Some(&p.u_label))?;
                check_vertex(g, p.v, Some(&p.v_label))?;
                if p.u == p.v || p.length == 0 || p.length >= count {
                    return Err(format!("({}, {}, {}) is not a valid query", p.u, p.v, p.length));
                }
                if exhaustive_path_exists(g, p.u, p.v, p.length) {
                    return Err(format!("a {}-{} path of length {} exists", p.u, p.v, p.length));
                }
            }
            Ok(())
        }
        Counterexample::NoCycle { lengths } => {
            if lengths.is_empty() {
                return Err("no lengths listed".into());
            }
            for &l in lengths {
                if !(3..=count).contains(&l) {
                    return Err(format!("cycle length {l} is out of range"));
                }
                if exhaustive_cycle_exists(g, l) {
                    return Err(format!("a cycle of length {l} exists"));
                }
            }
            Ok(())
        }
        Counterexample::VertexCut { cut, labels, delta } => {
            if cut.len() != labels.len() {
                return Err("cut and labels differ in length".into());
            }
            for (&x, l) in cut.iter().zip(labels) {
                check_vertex(g, x, Some(l))?;
            }
            let min = degree_stats(g).min;
            if *delta != min {
                return Err(format!("minimum degree is {min}, report says {delta}"));
            }
            if cut.len() >= min {
                return Err(format!("cut of size {} is not below the minimum degree {min}", cut.len()));
            }
            if connected_without(g, cut) {
                return Err("graph stays connected without the cut".into());
            }
            Ok(())
        }
        Counterexample::DegreeMismatch {
            u,
            v,
            u_degree,
            v_degree,
        } => {
            check_vertex(g, *u, None)?;
            check_vertex(g, *v, None)?;
            if (g.degree(*u), g.degree(*v)) != (*u_degree, *v_degree) {
                return Err("degrees differ from the report".into());
            }
            if u_degree == v_degree {
                return Err("degrees are equal".into());
            }
            Ok(())
        }
        Counterexample::EdgeMismatch { first, second } => {
            for &(a, b) in [first, second] {
                if !g.has_edge(a, b) {
                    return Err(format!("({a}, {b}) is not an edge"));
                }
            }
            let kind = |(a, b): (VertexId, VertexId)| {
                let (x, y) = (g.degree(a), g.degree(b));
                (x.min(y), x.max(y))
            };
            if kind(*first) == kind(*second) {
                return Err("edges have the same endpoint degrees".into());
            }
            Ok(())
        }
        Counterexample::IsoEdge {
            n,
            m,
            u,
            v,
            u_label,
            v_label,
        } => {
            let (source, target, map) = layer_square_candidate(*n, *m).map_err(|e| e.to_string())?;
            check_vertex(&source, *u, Some(u_label))?;
            check_vertex(&source, *v, Some(v_label))?;
            let (a, b) = (map[*u as usize], map[*v as usize]);
            if source.has_edge(*u, *v) == target.has_edge(a, b) {
                return Err("adjacency is preserved for this pair".into());
            }
            Ok(())
        }
        Counterexample::IsoVertexCount {
            source_vertices,
            target_vertices,
        } => {
            if source_vertices == target_vertices {
                return Err("vertex counts are equal".into());
            }
            Ok(())
        }
    }
}

#[derive(Deserialize)]
struct PairRecord {
    u: VertexId,
    v: VertexId,
    first_length: usize,
    #[serde(default)]
    witnesses: Option<Vec<Vec<VertexId>>>,
}

fn replay_witnesses(g: &Graph, check: &CheckReport, summary: &mut ReplaySummary) {
    let name = check.name.name();
    if let Some(pairs) = check.details.get("pairs") {
        let records: Vec<PairRecord> = match serde_json::from_value(pairs.clone()) {
            Ok(r) => r,
            Err(e) => return summary.push(name, "pair records", Err(e.to_string())),
        };
        for p in records {
            let Some(ws) = p.witnesses else { continue };
            let result = ws.into_iter().enumerate().filter(|(_, w)| !w.is_empty()).try_for_each(|(i, w)| {
                let w = PathWitness {
                    vertices: w,
                    target_length: p.first_length + i,
                };
                validate_path(g, &w, p.u, p.v).map_err(|e| format!("length {}: {e}", w.target_length))
            });
            summary.push(name, format!("witnesses {}-{}", p.u, p.v), result);
        }
    }
    if let Some(cycles) = check.details.get("cycles") {
        let result = serde_json::from_value::<Vec<Vec<VertexId>>>(cycles.clone())
            .map_err(|e| e.to_string())
            .and_then(|cs| {
                cs.into_iter().try_for_each(|vertices| {
                    let l = vertices.len();
                    validate_cycle(g, &CycleWitness { vertices }, l).map_err(|e| format!("length {l}: {e}"))
                })
            });
        summary.push(name, "cycle witnesses", result);
    }
}

/// Replays every counterexample and every retained witness in `report`.
pub fn replay(g: &Graph, report: &Report) -> ReplaySummary {
    let mut summary = ReplaySummary::default();
    let header = if report.schema != SCHEMA {
        Err(format!("unknown schema {:?}", report.schema))
    } else if (report.graph.meta.vertices, report.graph.meta.edges) != (g.vertex_count(), g.edge_count()) {
        Err(format!(
            "report is for {} vertices / {} edges, graph has {} / {}",
            report.graph.meta.vertices,
            report.graph.meta.edges,
            g.vertex_count(),
            g.edge_count()
        ))
    } else {
        Ok(())
    };
    let header_ok = header.is_ok();
    summary.push("report", "header", header);
    if !header_ok {
        return summary;
    }
    for check in &report.checks {
        let name = check.name.name();
        match (&check.counterexample, check.verdict) {
            (Some(c), Verdict::Fail) => {
                let kind = serde_json::to_value(c)
                    .ok()
                    .and_then(|v| v["kind"].as_str().map(str::to_string))
                    .unwrap_or_default();
                summary.push(name, kind, replay_counterexample(g, c));
            }
            (None, Verdict::Fail) => summary.push(name, "counterexample", Err("fail verdict without one".into())),
            (Some(_), _) => summary.push(name, "counterexample", Err("present on a non-fail verdict".into())),
            (None, _) => {}
        }
        replay_witnesses(g, check, &mut summary);
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::Check;
    use crate::checks::{run_check, CheckContext};
    use crate::report::{overall, ConfigEcho, GraphInfo, TOOL_VERSION};

    fn report_for(g: &Graph, checks: &[Check]) -> Report {
        let ctx = CheckContext {
            budget: 1_000_000,
            seed: 0,
            symmetry_reduced: false,
            witnesses: true,
            timing: false,
        };
        let results: Vec<CheckReport> = checks.iter().map(|&c| run_check(g, c, &ctx).unwrap()).collect();
        Report {
            schema: SCHEMA.into(),
            tool_version: TOOL_VERSION.into(),
            config: ConfigEcho {
                command: "verify".into(),
                family: None,
                n: None,
                m: None,
                graph_file: None,
                square: false,
                checks: checks.to_vec(),
                budget: ctx.budget,
                seed: 0,
                symmetry_reduced: false,
                witnesses: true,
                timing: false,
            },
            graph: GraphInfo::from(g.meta()),
            verdict: overall(results.iter().map(|r| &r.verdict)),
            checks: results,
            duration_ms: None,
        }
    }

    #[test]
    fn path_graph_counterexamples_replay() {
        let p5 = Graph::path(5).unwrap();
        let r = report_for(&p5, &[Check::Panconnected, Check::Pancyclic, Check::HamiltonConnected]);
        let s = replay(&p5, &r);
        assert!(s.all_confirmed(), "{}", s.render());
        assert!(s.render().ends_with("0 rejected\n"));
    }

    #[test]
    fn wrong_labels_are_rejected() {
        let c6 = Graph::cycle(6).unwrap();
        let mut r = report_for(&c6, &[Check::Panconnected]);
        if let Some(Counterexample::NoPath { paths }) = &mut r.checks[0].counterexample {
            paths[0].u_label = "9".into();
        }
        let s = replay(&c6, &r);
        assert!(!s.all_confirmed());
        assert!(s.items.iter().any(|i| i.note.contains("in the report")));
    }

    #[test]
    fn fake_cut_is_rejected() {
        let c6 = Graph::cycle(6).unwrap();
        let fake = Counterexample::VertexCut {
            cut: vec![0],
            labels: vec!["1".into()],
            delta: 2,
        };
        assert!(replay_counterexample(&c6, &fake).is_err());
        let real = Counterexample::VertexCut {
            cut: vec![0, 3],
            labels: vec!["1".into(), "4".into()],
            delta: 2,
        };
        // two vertices disconnect C6 but are not below the minimum degree
        assert!(replay_counterexample(&c6, &real).is_err());
    }
}
