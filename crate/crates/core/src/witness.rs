//! Path and cycle certificates, and checks that share nothing with the
//! search code: a witness is validated against adjacency alone, and a
//! claimed non-existence is replayed by unpruned exhaustive enumeration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

/// A simple path with a prescribed number of edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathWitness {
    pub vertices: Vec<VertexId>,
    pub target_length: usize,
}

impl PathWitness {
    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// A cycle `vertices[0] - ... - vertices[l-1] - vertices[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub vertices: Vec<VertexId>,
}

impl CycleWitness {
    pub fn length(&self) -> usize {
        self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("witness is empty")]
    Empty,
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("expected endpoints ({expected_u}, {expected_v}), got ({u}, {v})")]
    WrongEndpoints {
        expected_u: VertexId,
        expected_v: VertexId,
        u: VertexId,
        v: VertexId,
    },
    #[error("expected length {expected}, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("vertex {0} repeats")]
    Repeated(VertexId),
    #[error("({0}, {1}) is not an edge")]
    MissingEdge(VertexId, VertexId),
    #[error("cycle length {0} is below 3")]
    TooShort(usize),
}

fn check_simple_walk(g: &Graph, vertices: &[VertexId], closed: bool) -> Result<(), WitnessError> {
    let mut seen = vec![false; g.vertex_count()];
    for &x in vertices {
        if x as usize >= g.vertex_count() {
            return Err(WitnessError::UnknownVertex(x));
        }
        if seen[x as usize] {
            return Err(WitnessError::Repeated(x));
        }
        seen[x as usize] = true;
    }
    for pair in vertices.windows(2) {
        if !g.has_edge(pair[0], pair[1]) {
            return Err(WitnessError::MissingEdge(pair[0], pair[1]));
        }
    }
    if closed {
        let (first, last) = (vertices[0], vertices[vertices.len() - 1]);
        if !g.has_edge(last, first) {
            return Err(WitnessError::MissingEdge(last, first));
        }
    }
    Ok(())
}

/// Checks that `w` is a simple `u`-`v` path in `g` with `w.target_length` edges.
pub fn validate_path(g: &Graph, w: &PathWitness, u: VertexId, v: VertexId) -> Result<(), WitnessError> {
    let (&first, &last) = match (w.vertices.first(), w.vertices.last()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(WitnessError::Empty),
    };
    if (first, last) != (u, v) {
        return Err(WitnessError::WrongEndpoints {
            expected_u: u,
            expected_v: v,
            u: first,
            v: last,
        });
    }
    if w.length() != w.target_length {
        return Err(WitnessError::WrongLength {
            expected: w.target_length,
            actual: w.length(),
        });
    }
    check_simple_walk(g, &w.vertices, false)
}

/// Checks that `c` is a cycle of length `l` in `g`.
pub fn validate_cycle(g: &Graph, c: &CycleWitness, l: usize) -> Result<(), WitnessError> {
    if c.vertices.is_empty() {
        return Err(WitnessError::Empty);
    }
    if c.length() < 3 {
        return Err(WitnessError::TooShort(c.length()));
    }
    if c.length() != l {
        return Err(WitnessError::WrongLength {
            expected: l,
            actual: c.length(),
        });
    }
    check_simple_walk(g, &c.vertices, true)
}

/// Whether some simple `u`-`v` path has exactly `l` edges, by plain
/// enumeration of simple paths from `u`. Exponential; meant for replaying
/// counterexamples on small graphs.
pub fn exhaustive_path_exists(g: &Graph, u: VertexId, v: VertexId, l: usize) -> bool {
    fn walk(g: &Graph, x: VertexId, v: VertexId, left: usize, used: &mut [bool]) -> bool {
        if left == 0 {
            return x == v;
        }
        if x == v {
            return false;
        }
        for &y in g.neighbors(x) {
            if !used[y as usize] {
                used[y as usize] = true;
                let hit = walk(g, y, v, left - 1, used);
                used[y as usize] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    if u == v || u as usize >= g.vertex_count() || v as usize >= g.vertex_count() {
        return false;
    }
    let mut used = vec![false; g.vertex_count()];
    used[u as usize] = true;
    walk(g, u, v, l, &mut used)
}

/// Whether `g` has a cycle of length `l`, enumerating cycles by their least
/// vertex. Exponential; for replay on small graphs.
pub fn exhaustive_cycle_exists(g: &Graph, l: usize) -> bool {
    fn walk(g: &Graph, start: VertexId, x: VertexId, left: usize, used: &mut [bool]) -> bool {
        if left == 0 {
            return g.has_edge(x, start);
        }
        for &y in g.neighbors(x) {
            if y > start && !used[y as usize] {
                used[y as usize] = true;
                let hit = walk(g, start, y, left - 1, used);
                used[y as usize] = false;
                if hit {
                    return true;
                }
            }
        }
        false
    }
    if l < 3 || l > g.vertex_count() {
        return false;
    }
    let mut used = vec![false; g.vertex_count()];
    (0..g.vertex_count() as VertexId).any(|s| {
        used[s as usize] = true;
        let hit = walk(g, s, s, l - 1, &mut used);
        used[s as usize] = false;
        hit
    })
}
