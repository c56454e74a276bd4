//! Immutable simple graphs labelled by subsets, and the three constructors
//! this crate is about: Johnson graphs, Boolean-lattice layer graphs and
//! graph squares.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{self, binomial, SubsetWord};

/// Hard cap on constructed graphs; ids are `u32` and adjacency is list-based.
pub const MAX_VERTICES: u64 = 1 << 22;

/// Distance marker for vertices not reachable from the BFS source.
pub const UNREACHABLE: u32 = u32::MAX;

pub type VertexId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Johnson,
    Layer,
    Raw,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Johnson => "johnson",
            Family::Layer => "layer",
            Family::Raw => "raw",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "johnson" => Ok(Family::Johnson),
            "layer" => Ok(Family::Layer),
            "raw" => Ok(Family::Raw),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown family `{other}`"),
            }),
        }
    }
}

/// Constructor tag and parameters of a graph.
///
/// For raw graphs `n` is the label ground set and `m` is zero unless the
/// graph was loaded from a file that recorded something else.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphMeta {
    pub family: Family,
    pub n: u32,
    pub m: u32,
    /// Set on the output of [`square`].
    pub squared: bool,
    pub vertices: usize,
    pub edges: usize,
}

impl GraphMeta {
    /// Human-readable name such as `J(5,2)` or `B(4,1)^2`.
    pub fn name(&self) -> String {
        let base = match self.family {
            Family::Johnson => format!("J({},{})", self.n, self.m),
            Family::Layer => format!("B({},{})", self.n, self.m),
            Family::Raw => format!("raw[{}]", self.vertices),
        };
        if self.squared {
            format!("{base}^2")
        } else {
            base
        }
    }

    /// `(vertices, edges)` predicted by the family formulas, if any.
    pub fn expected_counts(&self) -> Option<(u64, u64)> {
        let (n, m) = (self.n, self.m);
        match (self.family, self.squared) {
            (Family::Johnson, false) => {
                let v = binomial(n, m);
                Some((v, v * u64::from(m) * u64::from(n - m) / 2))
            }
            (Family::Layer, false) => {
                let lower = binomial(n, m);
                Some((lower + binomial(n, m + 1), lower * u64::from(n - m)))
            }
            // the square of B(n,m) has the counts of J(n+1, m+1)
            (Family::Layer, true) => {
                let v = binomial(n + 1, m + 1);
                Some((v, v * u64::from(m + 1) * u64::from(n - m) / 2))
            }
            _ => None,
        }
    }
}

/// Minimum degree, maximum degree and regularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeStats {
    pub min: usize,
    pub max: usize,
    pub regular: bool,
}

/// Finite simple undirected graph whose vertices carry distinct subset labels.
///
/// Vertex ids are positions in the label table. Neighbour lists are sorted.
#[derive(Debug, Clone)]
pub struct Graph {
    meta: GraphMeta,
    labels: Vec<SubsetWord>,
    adjacency: Vec<Vec<VertexId>>,
    index: HashMap<u64, VertexId>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.meta == other.meta && self.labels == other.labels && self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

impl Graph {
    /// Validates and assembles a graph.
    ///
    /// Checks symmetry, irreflexivity, sorted neighbour lists, distinct
    /// labels over a common ground set, and the family's vertex/edge counts.
    pub fn from_parts(
        family: Family,
        n: u32,
        m: u32,
        squared: bool,
        labels: Vec<SubsetWord>,
        adjacency: Vec<Vec<VertexId>>,
    ) -> Result<Graph> {
        let count = labels.len();
        if adjacency.len() != count {
            return Err(Error::MalformedGraph(format!(
                "{} labels but {} adjacency rows",
                count,
                adjacency.len()
            )));
        }
        if count as u64 > MAX_VERTICES {
            return Err(Error::MalformedGraph(format!("{count} vertices exceeds cap")));
        }
        let mut index = HashMap::with_capacity(count);
        for (id, label) in labels.iter().enumerate() {
            if label.ground_n() != n {
                return Err(Error::MalformedGraph(format!(
                    "label {label} of vertex {id} has ground [{}], expected [{n}]",
                    label.ground_n()
                )));
            }
            if index.insert(label.bits(), id as VertexId).is_some() {
                return Err(Error::MalformedGraph(format!("duplicate label {label}")));
            }
        }
        let mut degree_sum = 0usize;
        for (u, row) in adjacency.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                if v as usize >= count {
                    return Err(Error::MalformedGraph(format!("edge ({u}, {v}) leaves the graph")));
                }
                if v as usize == u {
                    return Err(Error::MalformedGraph(format!("self-loop at {u}")));
                }
                if i > 0 && row[i - 1] >= v {
                    return Err(Error::MalformedGraph(format!(
                        "neighbour list of {u} not strictly ascending"
                    )));
                }
                if adjacency[v as usize].binary_search(&(u as VertexId)).is_err() {
                    return Err(Error::MalformedGraph(format!("edge ({u}, {v}) is not symmetric")));
                }
            }
            degree_sum += row.len();
        }
        let meta = GraphMeta {
            family,
            n,
            m,
            squared,
            vertices: count,
            edges: degree_sum / 2,
        };
        if let Some((v, e)) = meta.expected_counts() {
            if v != count as u64 || e != meta.edges as u64 {
                return Err(Error::MalformedGraph(format!(
                    "{} should have {v} vertices and {e} edges, found {} and {}",
                    meta.name(),
                    count,
                    meta.edges
                )));
            }
        }
        Ok(Graph {
            meta,
            labels,
            adjacency,
            index,
        })
    }

    /// A raw graph on `0..vertex_count` from an edge list. Vertex `i` is
    /// labelled `{i+1}` over `[vertex_count]`, so at most 64 vertices.
    pub fn from_edges(vertex_count: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph> {
        if vertex_count == 0 || vertex_count > 64 {
            return Err(Error::MalformedGraph(format!(
                "raw graphs need 1..=64 vertices, got {vertex_count}"
            )));
        }
        let n = vertex_count as u32;
        let labels = (1..=n)
            .map(|e| SubsetWord::from_elements([e], n))
            .collect::<Result<Vec<_>>>()?;
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u as usize >= vertex_count || v as usize >= vertex_count {
                return Err(Error::VertexOutOfRange {
                    vertex: u.max(v),
                    count: vertex_count,
                });
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for row in &mut adjacency {
            row.sort_unstable();
            row.dedup();
        }
        Graph::from_parts(Family::Raw, n, 0, false, labels, adjacency)
    }

    /// The cycle `0 - 1 - ... - (k-1) - 0`.
    pub fn cycle(k: usize) -> Result<Graph> {
        let edges: Vec<_> = (0..k).map(|i| (i as u32, ((i + 1) % k) as u32)).collect();
        Graph::from_edges(k, &edges)
    }

    /// The path `0 - 1 - ... - (k-1)`.
    pub fn path(k: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..k).map(|i| (i as u32 - 1, i as u32)).collect();
        Graph::from_edges(k, &edges)
    }

    pub fn complete(k: usize) -> Result<Graph> {
        let mut edges = Vec::new();
        for u in 0..k as u32 {
            for v in u + 1..k as u32 {
                edges.push((u, v));
            }
        }
        Graph::from_edges(k, &edges)
    }

    #[inline]
    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.meta.edges
    }

    #[inline]
    pub fn labels(&self) -> &[SubsetWord] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, v: VertexId) -> SubsetWord {
        self.labels[v as usize]
    }

    /// Vertex carrying `label`, if any.
    pub fn id_of(&self, label: SubsetWord) -> Option<VertexId> {
        if label.ground_n() != self.meta.n {
            return None;
        }
        self.index.get(&label.bits()).copied()
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v as usize]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        (u as usize) < self.adjacency.len() && self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if (v as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count(),
            })
        }
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, row)| {
            let u = u as VertexId;
            row.iter().copied().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn adjacency(&self) -> &[Vec<VertexId>] {
        &self.adjacency
    }
}

fn check_size(family: &'static str, n: u32, m: u32, vertices: u64) -> Result<()> {
    if vertices > MAX_VERTICES {
        return Err(Error::InvalidParameters {
            family,
            n,
            m,
            reason: format!("{vertices} vertices exceeds the supported maximum {MAX_VERTICES}"),
        });
    }
    Ok(())
}

/// Johnson graph `J(n, m)`: the `m`-subsets of `[n]` in colex order, adjacent
/// when their symmetric difference has two elements.
pub fn build_johnson(n: u32, m: u32) -> Result<Graph> {
    if !(1 <= m && m < n && n <= subset::MAX_GROUND) {
        return Err(Error::InvalidParameters {
            family: "J",
            n,
            m,
            reason: "need 1 <= m < n <= 64".into(),
        });
    }
    check_size("J", n, m, binomial(n, m))?;
    let labels = subset::enumerate_k_subsets(n, m)?;
    let full = SubsetWord::full(n)?.bits();
    let adjacency = labels
        .iter()
        .map(|&v| {
            // swap one element out for one element in
            let mut row = Vec::with_capacity((m * (n - m)) as usize);
            let mut inside = v.bits();
            while inside != 0 {
                let out = inside & inside.wrapping_neg();
                inside ^= out;
                let mut outside = full & !v.bits();
                while outside != 0 {
                    let add = outside & outside.wrapping_neg();
                    outside ^= add;
                    let w = SubsetWord::new_unchecked((v.bits() ^ out) | add, n);
                    row.push(subset::rank(w) as VertexId);
                }
            }
            row.sort_unstable();
            row
        })
        .collect();
    Graph::from_parts(Family::Johnson, n, m, false, labels, adjacency)
}

/// Layer graph `B(n, m)`: the `m`-subsets followed by the `(m+1)`-subsets of
/// `[n]`, each block in colex order, with an edge for every containment.
///
/// Requires `n >= 3` and `1 <= m < n/2`.
pub fn build_layer_graph(n: u32, m: u32) -> Result<Graph> {
    if !(n >= 3 && m >= 1 && 2 * m < n && n <= subset::MAX_GROUND) {
        return Err(Error::InvalidParameters {
            family: "B",
            n,
            m,
            reason: "layer graphs need n >= 3 and 1 <= m < n/2".into(),
        });
    }
    let lower_count = binomial(n, m);
    check_size("B", n, m, lower_count + binomial(n, m + 1))?;
    let lower = subset::enumerate_k_subsets(n, m)?;
    let upper = subset::enumerate_k_subsets(n, m + 1)?;
    let offset = lower_count as VertexId;
    let mut adjacency: Vec<Vec<VertexId>> = Vec::with_capacity(lower.len() + upper.len());
    let full = SubsetWord::full(n)?.bits();
    for &v in &lower {
        let mut row = Vec::with_capacity((n - m) as usize);
        let mut outside = full & !v.bits();
        while outside != 0 {
            let add = outside & outside.wrapping_neg();
            outside ^= add;
            let w = SubsetWord::new_unchecked(v.bits() | add, n);
            row.push(offset + subset::rank(w) as VertexId);
        }
        row.sort_unstable();
        adjacency.push(row);
    }
    for &w in &upper {
        let mut row = Vec::with_capacity((m + 1) as usize);
        let mut inside = w.bits();
        while inside != 0 {
            let drop = inside & inside.wrapping_neg();
            inside ^= drop;
            let v = SubsetWord::new_unchecked(w.bits() ^ drop, n);
            row.push(subset::rank(v) as VertexId);
        }
        row.sort_unstable();
        adjacency.push(row);
    }
    let labels = lower.into_iter().chain(upper).collect();
    Graph::from_parts(Family::Layer, n, m, false, labels, adjacency)
}

/// `G²`: same vertices and labels, adjacent when `1 <= dist(u, v) <= 2`.
pub fn square(g: &Graph) -> Graph {
    let count = g.vertex_count();
    let mut mark = vec![VertexId::MAX; count];
    let adjacency = (0..count as VertexId)
        .map(|u| {
            mark[u as usize] = u;
            let mut row = Vec::new();
            for &w in g.neighbors(u) {
                if mark[w as usize] != u {
                    mark[w as usize] = u;
                    row.push(w);
                }
                for &x in g.neighbors(w) {
                    if mark[x as usize] != u {
                        mark[x as usize] = u;
                        row.push(x);
                    }
                }
            }
            row.sort_unstable();
            row
        })
        .collect();
    let meta = g.meta();
    // only B(n,m) has a closed form for its square
    let family = match (meta.family, meta.squared) {
        (Family::Layer, false) => Family::Layer,
        _ => Family::Raw,
    };
    Graph::from_parts(family, meta.n, meta.m, true, g.labels().to_vec(), adjacency)
        .expect("square of a valid graph is a valid graph")
}

/// Hop distances from `source`; [`UNREACHABLE`] marks other components.
pub fn bfs_distances(g: &Graph, source: VertexId) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.vertex_count()];
    let mut queue = VecDeque::new();
    dist[source as usize] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u as usize] + 1;
        for &v in g.neighbors(u) {
            if dist[v as usize] == UNREACHABLE {
                dist[v as usize] = next;
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn degree_stats(g: &Graph) -> DegreeStats {
    let min = (0..g.vertex_count() as VertexId).map(|v| g.degree(v)).min().unwrap_or(0);
    let max = (0..g.vertex_count() as VertexId).map(|v| g.degree(v)).max().unwrap_or(0);
    DegreeStats {
        min,
        max,
        regular: min == max,
    }
}

pub fn is_connected(g: &Graph) -> Result<bool> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(bfs_distances(g, 0).iter().all(|&d| d != UNREACHABLE))
}
