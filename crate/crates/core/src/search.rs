//! Depth-first search for a simple `u`-`v` path with exactly `l` edges.
//!
//! The only pruning is by remaining distance: a partial path ending at `c`
//! with `r` edges still to place is abandoned when `dist(c, v) > r`.
//! Neighbours are tried in ascending id order, so results are deterministic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_distances, Graph, VertexId, UNREACHABLE};
use crate::witness::PathWitness;

/// Node-expansion budget used when the caller does not pick one.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(PathWitness),
    /// The search space was exhausted without hitting the budget.
    NotFound,
    /// Inconclusive: the budget ran out first.
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutcomeKind {
    Found,
    NotFound,
    BudgetExhausted,
}

impl SearchOutcome {
    pub fn kind(&self) -> OutcomeKind {
        match self {
            SearchOutcome::Found(_) => OutcomeKind::Found,
            SearchOutcome::NotFound => OutcomeKind::NotFound,
            SearchOutcome::BudgetExhausted => OutcomeKind::BudgetExhausted,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    pub nodes_expanded: u64,
}

/// Reusable search state for one target vertex; the distance table toward
/// the target is computed once and shared by every start vertex and length.
#[derive(Debug, Clone)]
pub struct PathSearcher<'g> {
    g: &'g Graph,
    target: VertexId,
    dist: Vec<u32>,
    on_path: Vec<bool>,
    stack: Vec<(VertexId, usize)>,
}

impl<'g> PathSearcher<'g> {
    pub fn new(g: &'g Graph, target: VertexId) -> Result<Self> {
        g.check_vertex(target)?;
        Ok(PathSearcher {
            g,
            target,
            dist: bfs_distances(g, target),
            on_path: vec![false; g.vertex_count()],
            stack: Vec::new(),
        })
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    /// Distance from `x` to the target ([`UNREACHABLE`] if none).
    pub fn distance(&self, x: VertexId) -> u32 {
        self.dist[x as usize]
    }

    /// Searches for a simple path from `start` to the target with exactly
    /// `length` edges, expanding at most `budget` nodes.
    pub fn find(&mut self, start: VertexId, length: usize, budget: u64) -> Result<SearchResult> {
        let g = self.g;
        let v = self.target;
        g.check_vertex(start)?;
        if start == v {
            return Err(Error::SameEndpoints(v));
        }
        let d = self.dist[start as usize];
        let max = g.vertex_count() - 1;
        if d == UNREACHABLE || (d as usize) > length || length > max {
            return Err(Error::LengthOutOfRange {
                length,
                min: if d == UNREACHABLE { usize::MAX } else { d as usize },
                max,
            });
        }

        let mut nodes = 1u64;
        self.stack.clear();
        self.stack.push((start, 0));
        self.on_path[start as usize] = true;
        let outcome = loop {
            let depth = self.stack.len(); // edge count after the next push
            let Some(top) = self.stack.last_mut() else {
                break SearchOutcome::NotFound;
            };
            let (c, next) = *top;
            let nbrs = g.neighbors(c);
            if next == nbrs.len() {
                self.on_path[c as usize] = false;
                self.stack.pop();
                continue;
            }
            top.1 += 1;
            let w = nbrs[next];
            if self.on_path[w as usize] {
                continue;
            }
            if w == v {
                if depth == length {
                    let mut vertices: Vec<VertexId> = self.stack.iter().map(|&(x, _)| x).collect();
                    vertices.push(v);
                    break SearchOutcome::Found(PathWitness {
                        vertices,
                        target_length: length,
                    });
                }
                continue;
            }
            if self.dist[w as usize] as usize > length - depth {
                continue;
            }
            nodes += 1;
            if nodes > budget {
                break SearchOutcome::BudgetExhausted;
            }
            self.on_path[w as usize] = true;
            self.stack.push((w, 0));
        };
        for &(x, _) in &self.stack {
            self.on_path[x as usize] = false;
        }
        self.stack.clear();
        Ok(SearchResult {
            outcome,
            nodes_expanded: nodes,
        })
    }
}

/// One-shot [`PathSearcher::find`].
pub fn find_path_of_length(g: &Graph, u: VertexId, v: VertexId, l: usize, budget: u64) -> Result<SearchResult> {
    if u == v {
        return Err(Error::SameEndpoints(u));
    }
    PathSearcher::new(g, v)?.find(u, l, budget)
}
