//! Whole-graph verifiers: panconnectedness, Hamilton-connectedness and
//! pancyclicity, each producing a deterministic report with revalidated
//! witnesses and explicit counterexamples.
//!
//! Independent `(pair, length)` searches run on the ambient rayon pool;
//! results are collected in canonical order, so the thread count never
//! changes a report.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{is_connected, Family, Graph, GraphMeta, VertexId};
use crate::search::{OutcomeKind, PathSearcher, SearchOutcome, DEFAULT_BUDGET};
use crate::subset::{self, SubsetWord};
use crate::witness::{validate_cycle, validate_path, CycleWitness, PathWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Any definite failure wins; otherwise any exhausted budget makes the
    /// result inconclusive.
    pub fn combine<I: IntoIterator<Item = OutcomeKind>>(kinds: I) -> Verdict {
        let mut verdict = Verdict::Pass;
        for kind in kinds {
            match kind {
                OutcomeKind::NotFound => return Verdict::Fail,
                OutcomeKind::BudgetExhausted => verdict = Verdict::Inconclusive,
                OutcomeKind::Found => {}
            }
        }
        verdict
    }

    pub fn worst(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Node expansions allowed per `(pair, length)` search.
    pub budget: u64,
    /// Keep every witness in the report instead of only counting them.
    pub retain_witnesses: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_BUDGET,
            retain_witnesses: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PanMode {
    Full,
    SymmetryReduced,
    HamiltonOnly,
}

/// Search results for one vertex pair over a contiguous length range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResult {
    pub u: VertexId,
    pub v: VertexId,
    pub distance: usize,
    /// Intersection-size class `m - |u ∩ v|` in symmetry-reduced runs.
    pub class: Option<u32>,
    pub first_length: usize,
    pub outcomes: Vec<OutcomeKind>,
    pub witnesses: Vec<Option<PathWitness>>,
    pub nodes_expanded: u64,
}

impl PairResult {
    pub fn lengths(&self) -> RangeInclusive<usize> {
        self.first_length..=self.first_length + self.outcomes.len() - 1
    }

    pub fn outcome(&self, length: usize) -> Option<OutcomeKind> {
        length
            .checked_sub(self.first_length)
            .and_then(|i| self.outcomes.get(i).copied())
    }

    /// `'1'` per found length, `'0'` otherwise, starting at `first_length`.
    pub fn achieved_bitmap(&self) -> String {
        self.outcomes
            .iter()
            .map(|&k| if k == OutcomeKind::Found { '1' } else { '0' })
            .collect()
    }

    pub fn verdict(&self) -> Verdict {
        Verdict::combine(self.outcomes.iter().copied())
    }
}

#[derive(Serialize)]
struct PairRecord<'a> {
    u: VertexId,
    v: VertexId,
    distance: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<u32>,
    first_length: usize,
    achieved: String,
    nodes_expanded: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witnesses: Option<Vec<&'a [VertexId]>>,
}

impl Serialize for PairResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let witnesses = self
            .witnesses
            .iter()
            .any(Option::is_some)
            .then(|| {
                self.witnesses
                    .iter()
                    .map(|w| w.as_ref().map_or(&[][..], |w| &w.vertices[..]))
                    .collect()
            });
        PairRecord {
            u: self.u,
            v: self.v,
            distance: self.distance,
            class: self.class,
            first_length: self.first_length,
            achieved: self.achieved_bitmap(),
            nodes_expanded: self.nodes_expanded,
            witnesses,
        }
        .serialize(serializer)
    }
}

/// A `(u, v, length)` triple with no path, or with an exhausted budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathCounterexample {
    pub u: VertexId,
    pub v: VertexId,
    pub length: usize,
    pub outcome: OutcomeKind,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub pairs: usize,
    pub lengths_checked: usize,
    pub nodes_expanded: u64,
    pub witnesses_revalidated: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PanReport {
    pub graph: GraphMeta,
    pub mode: PanMode,
    pub verdict: Verdict,
    pub stats: SearchStats,
    /// Every failing or inconclusive `(pair, length)`, in canonical order.
    pub counterexamples: Vec<PathCounterexample>,
    pub pairs: Vec<PairResult>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PanReport {
    pub fn first_counterexample(&self) -> Option<&PathCounterexample> {
        self.counterexamples.first()
    }

    pub fn pair(&self, u: VertexId, v: VertexId) -> Option<&PairResult> {
        self.pairs.iter().find(|p| (p.u, p.v) == (u.min(v), u.max(v)))
    }

    /// Every pair reaches the Hamilton length `|V| - 1`.
    pub fn hamilton_rows_pass(&self) -> bool {
        let top = self.graph.vertices - 1;
        self.pairs.iter().all(|p| p.outcome(top) == Some(OutcomeKind::Found))
    }

    /// Cycle lengths `l` (3..=|V|) closable from this report: some adjacent
    /// pair has a path of length `l - 1`.
    pub fn closable_cycle_lengths(&self) -> Vec<usize> {
        (3..=self.graph.vertices)
            .filter(|&l| {
                self.pairs
                    .iter()
                    .any(|p| p.distance == 1 && p.outcome(l - 1) == Some(OutcomeKind::Found))
            })
            .collect()
    }
}

fn check_host(g: &Graph) -> Result<()> {
    if g.vertex_count() < 3 {
        return Err(Error::MalformedGraph(format!(
            "verifiers need at least 3 vertices, got {}",
            g.vertex_count()
        )));
    }
    if !is_connected(g)? {
        return Err(Error::MalformedGraph("verifiers need a connected graph".into()));
    }
    Ok(())
}

fn search_pair(
    g: &Graph,
    u: VertexId,
    v: VertexId,
    hamilton_only: bool,
    class: Option<u32>,
    opts: VerifyOptions,
) -> Result<(PairResult, usize)> {
    let mut searcher = PathSearcher::new(g, v)?;
    let distance = searcher.distance(u) as usize;
    let top = g.vertex_count() - 1;
    let first_length = if hamilton_only { top } else { distance };
    let mut result = PairResult {
        u,
        v,
        distance,
        class,
        first_length,
        outcomes: Vec::with_capacity(top + 1 - first_length),
        witnesses: Vec::new(),
        nodes_expanded: 0,
    };
    let mut revalidated = 0;
    for l in first_length..=top {
        let r = searcher.find(u, l, opts.budget)?;
        result.nodes_expanded += r.nodes_expanded;
        result.outcomes.push(r.outcome.kind());
        let kept = match r.outcome {
            SearchOutcome::Found(w) => {
                validate_path(g, &w, u, v)
                    .map_err(|e| Error::Internal(format!("search produced a bad witness {u}->{v} len {l}: {e}")))?;
                revalidated += 1;
                opts.retain_witnesses.then_some(w)
            }
            _ => None,
        };
        if opts.retain_witnesses {
            result.witnesses.push(kept);
        }
    }
    Ok((result, revalidated))
}

fn run_pairs(
    g: &Graph,
    pairs: Vec<(VertexId, VertexId, Option<u32>)>,
    mode: PanMode,
    opts: VerifyOptions,
) -> Result<PanReport> {
    let started = Instant::now();
    let hamilton_only = mode == PanMode::HamiltonOnly;
    let results = pairs
        .into_par_iter()
        .map(|(u, v, class)| search_pair(g, u, v, hamilton_only, class, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut stats = SearchStats::default();
    let mut counterexamples = Vec::new();
    let mut pairs = Vec::with_capacity(results.len());
    for (p, revalidated) in results {
        stats.pairs += 1;
        stats.lengths_checked += p.outcomes.len();
        stats.nodes_expanded += p.nodes_expanded;
        stats.witnesses_revalidated += revalidated;
        for l in p.lengths() {
            let outcome = p.outcome(l).unwrap();
            if outcome != OutcomeKind::Found {
                counterexamples.push(PathCounterexample { u: p.u, v: p.v, length: l, outcome });
            }
        }
        pairs.push(p);
    }
    let verdict = Verdict::combine(counterexamples.iter().map(|c| c.outcome));
    Ok(PanReport {
        graph: *g.meta(),
        mode,
        verdict,
        stats,
        counterexamples,
        pairs,
        elapsed: started.elapsed(),
    })
}

fn all_pairs(g: &Graph) -> Vec<(VertexId, VertexId, Option<u32>)> {
    let count = g.vertex_count() as VertexId;
    (0..count)
        .flat_map(|u| (u + 1..count).map(move |v| (u, v, None)))
        .collect()
}

/// Checks every unordered pair `u < v` for a `u`-`v` path of every length
/// `d(u,v) ..= |V|-1`.
pub fn verify_panconnected(g: &Graph, opts: VerifyOptions) -> Result<PanReport> {
    check_host(g)?;
    run_pairs(g, all_pairs(g), PanMode::Full, opts)
}

/// Representative pairs of `J(n,m)`: `u₀ = {1..m}` and, for each distance
/// `d`, `v_d = {1..m-d} ∪ {m+1..m+d}`.
pub fn johnson_class_representatives(g: &Graph) -> Result<Vec<(VertexId, VertexId, u32)>> {
    let meta = g.meta();
    if meta.family != Family::Johnson || meta.squared {
        return Err(Error::NotJohnson(meta.name()));
    }
    let (n, m) = (meta.n, meta.m);
    let base = SubsetWord::from_elements(1..=m, n)?;
    let u0 = g.id_of(base).ok_or_else(|| Error::Internal("{1..m} missing".into()))?;
    (1..=m.min(n - m))
        .map(|d| {
            let vd = SubsetWord::from_elements((1..=m - d).chain(m + 1..=m + d), n)?;
            let id = subset::rank(vd) as VertexId;
            Ok((u0, id, d))
        })
        .collect()
}

/// Panconnectedness of `J(n,m)` checked on one pair per intersection class.
///
/// This leans on `J(n,m)` acting transitively on pairs at each distance;
/// the full verifier stays the reference, and the two are compared in tests.
pub fn verify_panconnected_symmetry_reduced(g: &Graph, opts: VerifyOptions) -> Result<PanReport> {
    let reps = johnson_class_representatives(g)?;
    check_host(g)?;
    let pairs = reps.into_iter().map(|(u, v, d)| (u, v, Some(d))).collect();
    run_pairs(g, pairs, PanMode::SymmetryReduced, opts)
}

/// Checks every pair for a Hamilton path (`|V| - 1` edges).
pub fn verify_hamilton_connected(g: &Graph, opts: VerifyOptions) -> Result<PanReport> {
    check_host(g)?;
    run_pairs(g, all_pairs(g), PanMode::HamiltonOnly, opts)
}

/// Result for one cycle length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleResult {
    pub length: usize,
    pub outcome: OutcomeKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<CycleWitness>,
    /// Edges tried as closing edge before deciding.
    pub edges_tried: usize,
    pub nodes_expanded: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleReport {
    pub graph: GraphMeta,
    pub verdict: Verdict,
    pub stats: SearchStats,
    /// Lengths with no cycle (or an exhausted budget).
    pub counterexamples: Vec<CycleResult>,
    pub lengths: Vec<CycleResult>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CycleReport {
    pub fn length(&self, l: usize) -> Option<&CycleResult> {
        self.lengths.iter().find(|c| c.length == l)
    }
}

fn search_cycle(g: &Graph, l: usize, budget: u64) -> Result<CycleResult> {
    let mut result = CycleResult {
        length: l,
        outcome: OutcomeKind::NotFound,
        witness: None,
        edges_tried: 0,
        nodes_expanded: 0,
    };
    let mut exhausted = false;
    let mut searcher: Option<PathSearcher> = None;
    for (u, v) in g.edges() {
        if searcher.as_ref().is_none_or(|s| s.target() != v) {
            searcher = Some(PathSearcher::new(g, v)?);
        }
        let s = searcher.as_mut().unwrap();
        result.edges_tried += 1;
        let r = s.find(u, l - 1, budget)?;
        result.nodes_expanded += r.nodes_expanded;
        match r.outcome {
            SearchOutcome::Found(w) => {
                let cycle = CycleWitness { vertices: w.vertices };
                validate_cycle(g, &cycle, l)
                    .map_err(|e| Error::Internal(format!("search produced a bad cycle of length {l}: {e}")))?;
                result.outcome = OutcomeKind::Found;
                result.witness = Some(cycle);
                return Ok(result);
            }
            SearchOutcome::BudgetExhausted => exhausted = true,
            SearchOutcome::NotFound => {}
        }
    }
    if exhausted {
        result.outcome = OutcomeKind::BudgetExhausted;
    }
    Ok(result)
}

/// Looks for a cycle of each length in `lengths`, closing a `u`-`v` path of
/// length `l - 1` with the edge `{u, v}`, edges tried in lexicographic order.
pub fn verify_cycle_lengths(g: &Graph, lengths: RangeInclusive<usize>, opts: VerifyOptions) -> Result<CycleReport> {
    if g.vertex_count() < 3 {
        return Err(Error::MalformedGraph("pancyclicity needs at least 3 vertices".into()));
    }
    let (lo, hi) = (*lengths.start(), *lengths.end());
    if lo < 3 || hi > g.vertex_count() {
        return Err(Error::LengthOutOfRange {
            length: if lo < 3 { lo } else { hi },
            min: 3,
            max: g.vertex_count(),
        });
    }
    let started = Instant::now();
    let results = lengths
        .into_par_iter()
        .map(|l| search_cycle(g, l, opts.budget))
        .collect::<Result<Vec<_>>>()?;
    let mut stats = SearchStats::default();
    for r in &results {
        stats.lengths_checked += 1;
        stats.pairs += r.edges_tried;
        stats.nodes_expanded += r.nodes_expanded;
        stats.witnesses_revalidated += usize::from(r.witness.is_some());
    }
    let verdict = Verdict::combine(results.iter().map(|r| r.outcome));
    let counterexamples = results
        .iter()
        .filter(|r| r.outcome != OutcomeKind::Found)
        .cloned()
        .collect();
    Ok(CycleReport {
        graph: *g.meta(),
        verdict,
        stats,
        counterexamples,
        lengths: results,
        elapsed: started.elapsed(),
    })
}

/// Cycles of every length `3 ..= |V|`.
pub fn verify_pancyclic(g: &Graph, opts: VerifyOptions) -> Result<CycleReport> {
    if g.vertex_count() < 3 {
        return Err(Error::MalformedGraph("pancyclicity needs at least 3 vertices".into()));
    }
    verify_cycle_lengths(g, 3..=g.vertex_count(), opts)
}
