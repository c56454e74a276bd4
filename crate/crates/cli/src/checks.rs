//! One function per `--check` value, each turning a library run into a
//! [`CheckReport`].

use std::time::Instant;

use johnson_core::connectivity::{analyze_connectivity, deletion_spot_check};
use johnson_core::graph::{bfs_distances, degree_stats, Family, GraphMeta, UNREACHABLE};
use johnson_core::morphism::{
    certify_bijection, check_edge_transitive, check_vertex_transitive, default_generators, layer_square_candidate,
    Certification, Generator, Refutation,
};
use johnson_core::search::OutcomeKind;
use johnson_core::verify::{
    verify_hamilton_connected, verify_panconnected, verify_panconnected_symmetry_reduced, verify_pancyclic, Verdict,
    VerifyOptions,
};
use johnson_core::{Error, Graph, VertexId};
use serde_json::{json, Value};

use crate::args::Check;
use crate::error::CliError;
use crate::report::{CheckReport, CheckStats, Counterexample, MissingPath};

/// Random deletion sets tried by the connectivity check.
pub const SPOT_CHECK_TRIALS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckContext {
    pub budget: u64,
    pub seed: u64,
    pub symmetry_reduced: bool,
    pub witnesses: bool,
    pub timing: bool,
}

struct Outcome {
    verdict: Verdict,
    counterexample: Option<Counterexample>,
    stats: CheckStats,
    details: Value,
}

/// `(n, m)` of the layer graph whose square should be `g`'s iso target.
pub fn iso_params(meta: &GraphMeta) -> Option<(u32, u32)> {
    match (meta.family, meta.squared) {
        (Family::Layer, false) => Some((meta.n, meta.m)),
        (Family::Johnson, false) if meta.m >= 2 && meta.n >= 4 && 2 * (meta.m - 1) < meta.n - 1 => {
            Some((meta.n - 1, meta.m - 1))
        }
        _ => None,
    }
}

/// Why `check` cannot run on `meta` with these options, if it cannot.
pub fn applicability(meta: &GraphMeta, check: Check, ctx: &CheckContext) -> Result<(), String> {
    match check {
        Check::Iso35 if iso_params(meta).is_none() => Err(format!(
            "iso35 needs an unsquared layer graph or J(n,m) with 2 <= m <= n/2, got {}",
            meta.name()
        )),
        Check::Panconnected if ctx.symmetry_reduced && (meta.family != Family::Johnson || meta.squared) => {
            Err(format!("--symmetry-reduced needs a Johnson graph, got {}", meta.name()))
        }
        _ => Ok(()),
    }
}

pub fn run_check(g: &Graph, check: Check, ctx: &CheckContext) -> Result<CheckReport, CliError> {
    applicability(g.meta(), check, ctx).map_err(CliError::Usage)?;
    let started = Instant::now();
    let out = match check {
        Check::Iso35 => iso35(g)?,
        Check::Connectivity => connectivity(g, ctx)?,
        Check::Transitivity => transitivity(g)?,
        Check::VertexTransitive => vertex_transitive(g)?,
        Check::EdgeTransitive => edge_transitive(g)?,
        Check::Panconnected | Check::HamiltonConnected => paths(g, check, ctx)?,
        Check::Pancyclic => pancyclic(g, ctx)?,
    };
    Ok(CheckReport {
        name: check,
        verdict: out.verdict,
        counterexample: out.counterexample,
        stats: out.stats,
        details: out.details,
        duration_ms: ctx.timing.then(|| started.elapsed().as_millis() as u64),
    })
}

fn iso35(g: &Graph) -> Result<Outcome, CliError> {
    let (n, m) = iso_params(g.meta()).expect("checked by applicability");
    let (source, target, map) = layer_square_candidate(n, m)?;
    let b = certify_bijection(&source, &target, map)?;
    let counterexample = match b.status {
        Certification::Certified => None,
        Certification::Refuted(Refutation::Pair { u, v }) => Some(Counterexample::IsoEdge {
            n,
            m,
            u,
            v,
            u_label: source.label(u).to_string(),
            v_label: source.label(v).to_string(),
        }),
        Certification::Refuted(Refutation::VertexCount {
            source_vertices,
            target_vertices,
        }) => Some(Counterexample::IsoVertexCount {
            source_vertices,
            target_vertices,
        }),
        Certification::Unchecked => return Err(Error::Internal("certifier left the map unchecked".into()).into()),
    };
    let certified = counterexample.is_none();
    Ok(Outcome {
        verdict: if certified { Verdict::Pass } else { Verdict::Fail },
        counterexample,
        stats: CheckStats::default(),
        details: json!({
            "source": b.source.name(),
            "target": b.target.name(),
            "vertices": b.source.vertices,
            "edges_matched": if certified { b.source.edges } else { 0 },
            "certified": certified,
        }),
    })
}

fn connectivity(g: &Graph, ctx: &CheckContext) -> Result<Outcome, CliError> {
    let r = analyze_connectivity(g)?;
    let size = r.delta.saturating_sub(1);
    let spot = if size == 0 {
        None
    } else {
        deletion_spot_check(g, size, SPOT_CHECK_TRIALS, ctx.seed)
    };
    let cut = match (&r.cut, &spot) {
        (Some(cut), _) if r.kappa < r.delta => Some(cut.clone()),
        (_, Some(set)) => Some(set.clone()),
        _ => None,
    };
    let counterexample = cut.map(|cut| Counterexample::VertexCut {
        labels: cut.iter().map(|&x| g.label(x).to_string()).collect(),
        cut,
        delta: r.delta,
    });
    Ok(Outcome {
        verdict: if counterexample.is_some() { Verdict::Fail } else { Verdict::Pass },
        counterexample,
        stats: CheckStats::default(),
        details: json!({
            "kappa": r.kappa,
            "delta": r.delta,
            "pair": r.pair,
            "cut": r.cut,
            "spot_check": {
                "trials": if size == 0 { 0 } else { SPOT_CHECK_TRIALS },
                "size": size,
                "seed": ctx.seed,
                "disconnecting": spot,
            },
        }),
    })
}

fn generators(g: &Graph) -> Result<Vec<Generator>, CliError> {
    // labels of raw graphs carry no symmetry information
    Ok(match g.meta().family {
        Family::Raw => Vec::new(),
        _ => default_generators(g)?,
    })
}

struct VtResult {
    verdict: Verdict,
    counterexample: Option<Counterexample>,
    orbits: usize,
}

fn vt(g: &Graph, gens: &[Generator]) -> Result<VtResult, CliError> {
    let r = check_vertex_transitive(g, gens)?;
    let counterexample = r.degree_witness.map(|(u, v)| Counterexample::DegreeMismatch {
        u,
        v,
        u_degree: g.degree(u),
        v_degree: g.degree(v),
    });
    let verdict = if r.transitive {
        Verdict::Pass
    } else if counterexample.is_some() {
        Verdict::Fail
    } else {
        Verdict::Inconclusive
    };
    Ok(VtResult {
        verdict,
        counterexample,
        orbits: r.orbits.len(),
    })
}

fn edge_type(g: &Graph, (u, v): (VertexId, VertexId)) -> (usize, usize) {
    let (a, b) = (g.degree(u), g.degree(v));
    (a.min(b), a.max(b))
}

fn et(g: &Graph, gens: &[Generator]) -> Result<(Verdict, Option<Counterexample>), CliError> {
    if check_edge_transitive(g, gens)? {
        return Ok((Verdict::Pass, None));
    }
    let mut edges = g.edges();
    let first = edges.next().expect("edgeless graphs are edge-transitive");
    let kind = edge_type(g, first);
    Ok(match edges.find(|&e| edge_type(g, e) != kind) {
        Some(second) => (Verdict::Fail, Some(Counterexample::EdgeMismatch { first, second })),
        None => (Verdict::Inconclusive, None),
    })
}

fn vertex_transitive(g: &Graph) -> Result<Outcome, CliError> {
    let r = vt(g, &generators(g)?)?;
    Ok(Outcome {
        verdict: r.verdict,
        counterexample: r.counterexample,
        stats: CheckStats::default(),
        details: json!({
            "vertex_transitive": r.verdict == Verdict::Pass,
            "vertex_orbits": r.orbits,
            "regular": degree_stats(g).regular,
        }),
    })
}

fn edge_transitive(g: &Graph) -> Result<Outcome, CliError> {
    let (verdict, counterexample) = et(g, &generators(g)?)?;
    Ok(Outcome {
        verdict,
        counterexample,
        stats: CheckStats::default(),
        details: json!({ "edge_transitive": verdict == Verdict::Pass }),
    })
}

/// Both transitivity properties against what the family predicts: a layer
/// graph `B(n,m)` is vertex-transitive exactly when `n = 2m+1`, everything
/// else built here is expected to be vertex- and edge-transitive.
fn transitivity(g: &Graph) -> Result<Outcome, CliError> {
    let meta = *g.meta();
    let gens = generators(g)?;
    let v = vt(g, &gens)?;
    let (e_verdict, e_counter) = et(g, &gens)?;
    let expect_vt = !(meta.family == Family::Layer && !meta.squared && meta.n != 2 * meta.m + 1);
    let v_verdict = match (expect_vt, v.verdict) {
        (true, x) => x,
        (false, Verdict::Fail) => Verdict::Pass,
        (false, Verdict::Inconclusive) => Verdict::Inconclusive,
        (false, Verdict::Pass) => {
            return Err(Error::Internal(format!("{} came out vertex-transitive", meta.name())).into());
        }
    };
    let verdict = v_verdict.worst(e_verdict);
    let counterexample = match (verdict, expect_vt) {
        (Verdict::Fail, true) if v_verdict == Verdict::Fail => v.counterexample.clone(),
        (Verdict::Fail, _) => e_counter,
        _ => None,
    };
    let stats = degree_stats(g);
    Ok(Outcome {
        verdict,
        counterexample,
        stats: CheckStats::default(),
        details: json!({
            "vertex_transitive": v.verdict == Verdict::Pass,
            "vertex_transitive_expected": expect_vt,
            "vertex_orbits": v.orbits,
            "degree_witness": v.counterexample,
            "edge_transitive": e_verdict == Verdict::Pass,
            "regular": stats.regular,
            "min_degree": stats.min,
            "max_degree": stats.max,
        }),
    })
}

fn missing(g: &Graph, u: VertexId, v: VertexId, length: usize) -> MissingPath {
    MissingPath {
        u,
        v,
        u_label: g.label(u).to_string(),
        v_label: g.label(v).to_string(),
        length,
    }
}

fn unreachable_pair(g: &Graph) -> Option<(VertexId, VertexId)> {
    let dist = bfs_distances(g, 0);
    let v = dist.iter().position(|&d| d == UNREACHABLE)?;
    Some((0, v as VertexId))
}

fn paths(g: &Graph, check: Check, ctx: &CheckContext) -> Result<Outcome, CliError> {
    if g.vertex_count() < 3 {
        return Err(CliError::Usage(format!("{} needs at least 3 vertices", check.name())));
    }
    if let Some((u, v)) = unreachable_pair(g) {
        return Ok(Outcome {
            verdict: Verdict::Fail,
            counterexample: Some(Counterexample::NoPath {
                paths: vec![missing(g, u, v, g.vertex_count() - 1)],
            }),
            stats: CheckStats::default(),
            details: json!({ "connected": false }),
        });
    }
    let opts = VerifyOptions {
        budget: ctx.budget,
        retain_witnesses: ctx.witnesses,
    };
    let r = match check {
        Check::Panconnected if ctx.symmetry_reduced => verify_panconnected_symmetry_reduced(g, opts)?,
        Check::Panconnected => verify_panconnected(g, opts)?,
        _ => verify_hamilton_connected(g, opts)?,
    };
    let not_found: Vec<MissingPath> = r
        .counterexamples
        .iter()
        .filter(|c| c.outcome == OutcomeKind::NotFound)
        .map(|c| missing(g, c.u, c.v, c.length))
        .collect();
    let exhausted: Vec<Value> = r
        .counterexamples
        .iter()
        .filter(|c| c.outcome == OutcomeKind::BudgetExhausted)
        .map(|c| json!({ "u": c.u, "v": c.v, "length": c.length }))
        .collect();
    let mut details = json!({
        "connected": true,
        "mode": r.mode,
        "budget_exhausted": exhausted,
    });
    if ctx.symmetry_reduced || ctx.witnesses {
        details["pairs"] = serde_json::to_value(&r.pairs)?;
    }
    Ok(Outcome {
        verdict: r.verdict,
        counterexample: (r.verdict == Verdict::Fail).then_some(Counterexample::NoPath { paths: not_found }),
        stats: r.stats.into(),
        details,
    })
}

fn pancyclic(g: &Graph, ctx: &CheckContext) -> Result<Outcome, CliError> {
    if g.vertex_count() < 3 {
        return Err(CliError::Usage("pancyclic needs at least 3 vertices".into()));
    }
    let opts = VerifyOptions {
        budget: ctx.budget,
        retain_witnesses: ctx.witnesses,
    };
    let r = verify_pancyclic(g, opts)?;
    let lengths_with = |kind: OutcomeKind| -> Vec<usize> {
        r.lengths.iter().filter(|c| c.outcome == kind).map(|c| c.length).collect()
    };
    let mut details = json!({
        "found": lengths_with(OutcomeKind::Found),
        "budget_exhausted": lengths_with(OutcomeKind::BudgetExhausted),
    });
    if ctx.witnesses {
        let cycles: Vec<&[VertexId]> = r
            .lengths
            .iter()
            .filter_map(|c| c.witness.as_ref().map(|w| &w.vertices[..]))
            .collect();
        details["cycles"] = json!(cycles);
    }
    Ok(Outcome {
        verdict: r.verdict,
        counterexample: (r.verdict == Verdict::Fail).then(|| Counterexample::NoCycle {
            lengths: lengths_with(OutcomeKind::NotFound),
        }),
        stats: r.stats.into(),
        details,
    })
}
