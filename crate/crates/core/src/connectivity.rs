//! Exact vertex connectivity through Menger's theorem: the number of
//! internally disjoint `u`-`v` paths is a unit-capacity max flow on the
//! vertex-split network, and `κ(G)` is its minimum over non-adjacent pairs.

use std::collections::VecDeque;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{degree_stats, is_connected, Graph, VertexId};

const NONE: u32 = u32::MAX;

/// Vertex-split flow network of a graph.
///
/// Vertex `x` becomes `x_in = 2x` and `x_out = 2x + 1` joined by a unit arc;
/// each edge `{a, b}` becomes the arcs `a_out -> b_in` and `b_out -> a_in`
/// with capacity large enough to never bind. Arcs come in residual pairs
/// `(2k, 2k+1)`.
#[derive(Debug, Clone)]
pub struct SplitNetwork {
    node_count: usize,
    offsets: Vec<usize>,
    arc_ids: Vec<u32>,
    heads: Vec<u32>,
    base_cap: Vec<u32>,
    cap: Vec<u32>,
    parent: Vec<u32>,
    queue: VecDeque<u32>,
}

impl SplitNetwork {
    pub fn from_graph(g: &Graph) -> SplitNetwork {
        let count = g.vertex_count();
        let node_count = 2 * count;
        let big = count as u32 + 1;
        let mut heads = Vec::with_capacity(2 * (count + 2 * g.edge_count()));
        let mut base_cap = Vec::with_capacity(heads.capacity());
        let mut tails = Vec::with_capacity(heads.capacity());
        let mut push = |from: u32, to: u32, c: u32| {
            heads.push(to);
            base_cap.push(c);
            tails.push(from);
            heads.push(from);
            base_cap.push(0);
            tails.push(to);
        };
        for x in 0..count as u32 {
            push(2 * x, 2 * x + 1, 1);
        }
        for (a, b) in g.edges() {
            push(2 * a + 1, 2 * b, big);
            push(2 * b + 1, 2 * a, big);
        }
        // CSR over tails
        let mut offsets = vec![0usize; node_count + 1];
        for &t in &tails {
            offsets[t as usize + 1] += 1;
        }
        for i in 0..node_count {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut arc_ids = vec![0u32; tails.len()];
        for (arc, &t) in tails.iter().enumerate() {
            arc_ids[fill[t as usize]] = arc as u32;
            fill[t as usize] += 1;
        }
        SplitNetwork {
            node_count,
            offsets,
            arc_ids,
            cap: base_cap.clone(),
            heads,
            base_cap,
            parent: vec![NONE; node_count],
            queue: VecDeque::new(),
        }
    }

    fn arcs_from(&self, node: u32) -> &[u32] {
        &self.arc_ids[self.offsets[node as usize]..self.offsets[node as usize + 1]]
    }

    fn augment(&mut self, source: u32, sink: u32) -> bool {
        self.parent.fill(NONE);
        self.queue.clear();
        self.parent[source as usize] = source; // any non-NONE marker
        self.queue.push_back(source);
        while let Some(x) = self.queue.pop_front() {
            for i in self.offsets[x as usize]..self.offsets[x as usize + 1] {
                let arc = self.arc_ids[i];
                let y = self.heads[arc as usize];
                if self.cap[arc as usize] > 0 && self.parent[y as usize] == NONE {
                    self.parent[y as usize] = arc;
                    if y == sink {
                        let mut node = sink;
                        while node != source {
                            let a = self.parent[node as usize];
                            self.cap[a as usize] -= 1;
                            self.cap[(a ^ 1) as usize] += 1;
                            node = self.heads[(a ^ 1) as usize];
                        }
                        return true;
                    }
                    self.queue.push_back(y);
                }
            }
        }
        false
    }

    /// Max flow from `u_out` to `v_in` with any direct `u`-`v` arcs removed,
    /// stopping once `limit` is reached.
    fn run(&mut self, u: VertexId, v: VertexId, limit: usize) -> usize {
        self.cap.copy_from_slice(&self.base_cap);
        let (source, sink) = (2 * u + 1, 2 * v);
        for i in self.offsets[source as usize]..self.offsets[source as usize + 1] {
            let arc = self.arc_ids[i] as usize;
            if self.heads[arc] == sink {
                self.cap[arc] = 0;
            }
        }
        let mut flow = 0;
        while flow < limit && self.augment(source, sink) {
            flow += 1;
        }
        flow
    }

    /// Vertices whose split arc crosses the residual cut after a full run.
    fn residual_separator(&mut self, u: VertexId) -> Vec<VertexId> {
        let source = 2 * u + 1;
        let mut seen = vec![false; self.node_count];
        seen[source as usize] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &arc in self.arcs_from(x) {
                let y = self.heads[arc as usize];
                if self.cap[arc as usize] > 0 && !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..(self.node_count / 2) as VertexId)
            .filter(|&x| x != u && seen[2 * x as usize] && !seen[2 * x as usize + 1])
            .collect()
    }
}

fn check_pair(g: &Graph, u: VertexId, v: VertexId) -> Result<()> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(Error::SameEndpoints(u));
    }
    Ok(())
}

/// Maximum number of internally vertex-disjoint `u`-`v` paths. A direct edge
/// counts as one path.
pub fn local_connectivity(g: &Graph, u: VertexId, v: VertexId) -> Result<usize> {
    check_pair(g, u, v)?;
    let mut net = SplitNetwork::from_graph(g);
    let flow = net.run(u, v, usize::MAX);
    Ok(flow + usize::from(g.has_edge(u, v)))
}

/// A minimum set of vertices separating the non-adjacent vertices `u`, `v`.
pub fn minimum_separator(g: &Graph, u: VertexId, v: VertexId) -> Result<Vec<VertexId>> {
    check_pair(g, u, v)?;
    if g.has_edge(u, v) {
        return Err(Error::MalformedGraph(format!("{u} and {v} are adjacent; no vertex separator exists")));
    }
    let mut net = SplitNetwork::from_graph(g);
    net.run(u, v, usize::MAX);
    Ok(net.residual_separator(u))
}

/// `κ(G)` with the witness that attains it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub kappa: usize,
    pub delta: usize,
    /// First non-adjacent pair (ascending) attaining `kappa`; `None` for
    /// complete or disconnected graphs.
    pub pair: Option<(VertexId, VertexId)>,
    /// A vertex cut of size `kappa`, when one exists.
    pub cut: Option<Vec<VertexId>>,
}

/// `κ(G)` plus a minimum vertex cut.
///
/// Disconnected graphs get `κ = 0` with an empty cut; complete graphs
/// `K_p` get `p - 1` and no cut. Pair flows run on the ambient rayon pool.
pub fn analyze_connectivity(g: &Graph) -> Result<ConnectivityReport> {
    let count = g.vertex_count();
    if count == 0 {
        return Err(Error::EmptyGraph);
    }
    let delta = degree_stats(g).min;
    if !is_connected(g)? {
        return Ok(ConnectivityReport {
            kappa: 0,
            delta,
            pair: None,
            cut: Some(Vec::new()),
        });
    }
    if 2 * g.edge_count() == count * (count - 1) {
        return Ok(ConnectivityReport {
            kappa: count - 1,
            delta,
            pair: None,
            cut: None,
        });
    }
    let base = SplitNetwork::from_graph(g);
    // κ ≤ δ for non-complete graphs; flows never need to exceed the best so far
    let best = AtomicUsize::new(delta);
    (0..count as VertexId).into_par_iter().for_each_init(
        || base.clone(),
        |net, u| {
            for v in u + 1..count as VertexId {
                if g.has_edge(u, v) {
                    continue;
                }
                let limit = best.load(Ordering::Relaxed);
                let flow = net.run(u, v, limit);
                if flow < limit {
                    best.fetch_min(flow, Ordering::Relaxed);
                }
            }
        },
    );
    let kappa = best.into_inner();
    // deterministic witness: first pair in ascending order reaching kappa
    let mut net = base;
    for u in 0..count as VertexId {
        for v in u + 1..count as VertexId {
            if !g.has_edge(u, v) && net.run(u, v, kappa + 1) == kappa {
                let cut = net.residual_separator(u);
                return Ok(ConnectivityReport {
                    kappa,
                    delta,
                    pair: Some((u, v)),
                    cut: Some(cut),
                });
            }
        }
    }
    Err(Error::Internal(format!("no pair attains kappa = {kappa}")))
}

/// Vertex connectivity `κ(G)`.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    analyze_connectivity(g).map(|r| r.kappa)
}

/// `|V| > k` and removing fewer than `k` vertices never disconnects.
pub fn is_k_connected(g: &Graph, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidParameters {
            family: "k-connected",
            n: g.vertex_count() as u32,
            m: 0,
            reason: "k must be at least 1".into(),
        });
    }
    Ok(g.vertex_count() > k && vertex_connectivity(g)? >= k)
}

/// Whether `g` stays connected after deleting `removed`.
pub fn connected_without(g: &Graph, removed: &[VertexId]) -> bool {
    let mut gone = vec![false; g.vertex_count()];
    for &x in removed {
        gone[x as usize] = true;
    }
    let Some(start) = (0..g.vertex_count()).find(|&x| !gone[x]) else {
        return true;
    };
    let mut seen = gone.clone();
    seen[start] = true;
    let mut stack = vec![start as VertexId];
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x) {
            if !seen[y as usize] {
                seen[y as usize] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    reached == g.vertex_count() - removed.len()
}

/// Deletes `size` random vertices `trials` times and returns the first
/// deletion set that disconnects the graph. Seeded, so reproducible.
pub fn deletion_spot_check(g: &Graph, size: usize, trials: usize, seed: u64) -> Option<Vec<VertexId>> {
    let count = g.vertex_count();
    if size >= count {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).find_map(|_| {
        let mut removed: Vec<VertexId> = sample(&mut rng, count, size).into_iter().map(|x| x as VertexId).collect();
        removed.sort_unstable();
        (!connected_without(g, &removed)).then_some(removed)
    })
}
