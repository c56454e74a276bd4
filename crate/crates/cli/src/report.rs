//! JSON report shapes shared by `verify`, `sweep --format json` and `replay`.

use johnson_core::graph::GraphMeta;
use johnson_core::verify::{SearchStats, Verdict};
use johnson_core::VertexId;
use serde::{Deserialize, Serialize};

use crate::args::{Check, FamilyArg};

pub const SCHEMA: &str = "panconnect-report/1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: String,
    pub family: Option<FamilyArg>,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub graph_file: Option<String>,
    pub square: bool,
    pub checks: Vec<Check>,
    pub budget: u64,
    pub seed: u64,
    pub symmetry_reduced: bool,
    pub witnesses: bool,
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphInfo {
    pub name: String,
    #[serde(flatten)]
    pub meta: GraphMeta,
}

impl From<&GraphMeta> for GraphInfo {
    fn from(meta: &GraphMeta) -> Self {
        GraphInfo {
            name: meta.name(),
            meta: *meta,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckStats {
    pub pairs: usize,
    pub lengths_checked: usize,
    pub nodes_expanded: u64,
    pub witnesses_revalidated: usize,
}

impl From<SearchStats> for CheckStats {
    fn from(s: SearchStats) -> Self {
        CheckStats {
            pairs: s.pairs,
            lengths_checked: s.lengths_checked,
            nodes_expanded: s.nodes_expanded,
            witnesses_revalidated: s.witnesses_revalidated,
        }
    }
}

/// A `(u, v, length)` with no simple path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingPath {
    pub u: VertexId,
    pub v: VertexId,
    pub u_label: String,
    pub v_label: String,
    pub length: usize,
}

/// Self-contained evidence for a `fail` verdict; `replay` re-checks each
/// kind against the edge-list file without the search code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Counterexample {
    NoPath {
        paths: Vec<MissingPath>,
    },
    NoCycle {
        lengths: Vec<usize>,
    },
    /// Deleting `cut` (fewer than `delta` vertices) disconnects the graph.
    VertexCut {
        cut: Vec<VertexId>,
        labels: Vec<String>,
        delta: usize,
    },
    DegreeMismatch {
        u: VertexId,
        v: VertexId,
        u_degree: usize,
        v_degree: usize,
    },
    /// Two edges whose endpoint degrees differ, so no automorphism swaps them.
    EdgeMismatch {
        first: (VertexId, VertexId),
        second: (VertexId, VertexId),
    },
    /// Source pair of `B(n,m)²` whose adjacency the map does not preserve.
    IsoEdge {
        n: u32,
        m: u32,
        u: VertexId,
        v: VertexId,
        u_label: String,
        v_label: String,
    },
    IsoVertexCount {
        source_vertices: usize,
        target_vertices: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: Check,
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub stats: CheckStats,
    pub details: serde_json::Value,
    pub duration_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub config: ConfigEcho,
    pub graph: GraphInfo,
    pub verdict: Verdict,
    pub checks: Vec<CheckReport>,
    pub duration_ms: Option<u64>,
}

/// Overall verdict: any fail, else any inconclusive, else pass.
pub fn overall<'a, I: IntoIterator<Item = &'a Verdict>>(verdicts: I) -> Verdict {
    verdicts.into_iter().fold(Verdict::Pass, |acc, &v| acc.worst(v))
}

/// Sweep output in JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema: String,
    pub tool_version: String,
    pub verdict: Verdict,
    pub reports: Vec<Report>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_prefers_fail() {
        use Verdict::*;
        assert_eq!(overall(&[]), Pass);
        assert_eq!(overall(&[Pass, Inconclusive]), Inconclusive);
        assert_eq!(overall(&[Inconclusive, Fail, Pass]), Fail);
    }

    #[test]
    fn counterexamples_are_tagged() {
        let c = Counterexample::NoCycle { lengths: vec![3] };
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"{"kind":"no-cycle","lengths":[3]}"#);
        assert_eq!(serde_json::from_str::<Counterexample>(&s).unwrap(), c);
        let d = Counterexample::DegreeMismatch {
            u: 0,
            v: 10,
            u_degree: 4,
            v_degree: 2,
        };
        assert!(serde_json::to_string(&d).unwrap().starts_with(r#"{"kind":"degree-mismatch""#));
    }
}
