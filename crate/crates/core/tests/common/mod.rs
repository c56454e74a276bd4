//! Brute-force oracles and a small-graph corpus. The oracles read only the
//! adjacency lists; they share no code with max-flow, path search or
//! verification.

#![allow(dead_code)]

use std::collections::BTreeSet;

use johnson_core::graph::{build_johnson, build_layer_graph, square};
use johnson_core::{Graph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Vertices reachable from `start` avoiding `blocked`, and ignoring the
/// edge `skip` if given.
fn reach(g: &Graph, start: usize, blocked: &[bool], skip: Option<(usize, usize)>) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(x) = stack.pop() {
        for &y in g.neighbors(x as VertexId) {
            let y = y as usize;
            if blocked[y] || seen[y] || skip.is_some_and(|(a, b)| (x, y) == (a, b) || (x, y) == (b, a)) {
                continue;
            }
            seen[y] = true;
            stack.push(y);
        }
    }
    seen
}

/// Every `k`-subset of `items`, lexicographic.
pub fn subsets_of(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn go(items: &[usize], k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in from..items.len() {
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Smallest set of other vertices separating `u` from `v`, found by trying
/// subsets in increasing size. For adjacent `u`, `v` the edge is dropped
/// and one is added, which by Menger counts internally disjoint paths.
pub fn brute_local_connectivity(g: &Graph, u: usize, v: usize) -> usize {
    let n = g.vertex_count();
    let adjacent = g.neighbors(u as VertexId).contains(&(v as VertexId));
    let skip = adjacent.then_some((u, v));
    let others: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
    for k in 0..=others.len() {
        for s in subsets_of(&others, k) {
            let mut blocked = vec![false; n];
            for &x in &s {
                blocked[x] = true;
            }
            if !reach(g, u, &blocked, skip)[v] {
                return k + usize::from(adjacent);
            }
        }
    }
    unreachable!("blocking every other vertex always separates")
}

/// Minimum vertex cut size by subset enumeration; `|V| - 1` for complete
/// graphs, 0 for disconnected ones.
pub fn brute_kappa(g: &Graph) -> usize {
    let n = g.vertex_count();
    let all: Vec<usize> = (0..n).collect();
    for k in 0..n.saturating_sub(1) {
        for s in subsets_of(&all, k) {
            let mut blocked = vec![false; n];
            for &x in &s {
                blocked[x] = true;
            }
            let start = (0..n).find(|&x| !blocked[x]).unwrap();
            let seen = reach(g, start, &blocked, None);
            if (0..n).any(|x| !blocked[x] && !seen[x]) {
                return k;
            }
        }
    }
    n - 1
}

/// Lengths of all simple paths from `u` to `v`, by full enumeration.
pub fn simple_path_lengths(g: &Graph, u: usize, v: usize) -> BTreeSet<usize> {
    fn walk(g: &Graph, x: usize, v: usize, depth: usize, used: &mut [bool], out: &mut BTreeSet<usize>) {
        if x == v {
            out.insert(depth);
            return;
        }
        for &y in g.neighbors(x as VertexId) {
            let y = y as usize;
            if !used[y] {
                used[y] = true;
                walk(g, y, v, depth + 1, used, out);
                used[y] = false;
            }
        }
    }
    let mut used = vec![false; g.vertex_count()];
    used[u] = true;
    let mut out = BTreeSet::new();
    walk(g, u, v, 0, &mut used, &mut out);
    out
}

/// Every `(u, v, l)` with `u < v` and `d(u,v) <= l <= |V|-1` that has no
/// simple path; `d` is the shortest enumerated length. `None` if some pair
/// is not joined at all.
pub fn brute_missing_lengths(g: &Graph) -> Option<Vec<(usize, usize, usize)>> {
    let n = g.vertex_count();
    let mut missing = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let lengths = simple_path_lengths(g, u, v);
            let &d = lengths.iter().next()?;
            missing.extend((d..n).filter(|l| !lengths.contains(l)).map(|l| (u, v, l)));
        }
    }
    Some(missing)
}

pub fn brute_panconnected(g: &Graph) -> bool {
    brute_missing_lengths(g).is_some_and(|m| m.is_empty())
}

/// Lengths `3..=|V|` for which some cycle exists, by enumeration.
pub fn brute_cycle_lengths(g: &Graph) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    for (u, v) in g.edges() {
        for l in simple_path_lengths(g, u as usize, v as usize) {
            if l >= 2 {
                out.insert(l + 1);
            }
        }
    }
    out
}

/// Edge count of `J(n,m)` by testing every pair of `m`-subsets of `[n]`.
pub fn brute_johnson_edges(n: u32, m: u32) -> u64 {
    let sets: Vec<u64> = (0u64..1 << n).filter(|s| s.count_ones() == m).collect();
    let mut count = 0;
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if (a ^ b).count_ones() == 2 {
                count += 1;
            }
        }
    }
    count
}

fn random_connected(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    loop {
        let mut edges = Vec::new();
        for u in 0..n as VertexId {
            for v in u + 1..n as VertexId {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        let blocked = vec![false; n];
        if reach(&g, 0, &blocked, None).iter().all(|&s| s) {
            return g;
        }
    }
}

fn from_pairs(n: usize, edges: &[(VertexId, VertexId)]) -> Graph {
    Graph::from_edges(n, edges).unwrap()
}

/// Named graphs with at most 12 vertices.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for k in 3..=12 {
        out.push((format!("C{k}"), Graph::cycle(k).unwrap()));
    }
    for k in 3..=12 {
        out.push((format!("P{k}"), Graph::path(k).unwrap()));
    }
    for k in 3..=8 {
        out.push((format!("K{k}"), Graph::complete(k).unwrap()));
    }
    for (n, m) in [(4, 1), (4, 2), (5, 1), (5, 2), (6, 1)] {
        out.push((format!("J({n},{m})"), build_johnson(n, m).unwrap()));
    }
    for (n, m) in [(3, 1), (4, 1)] {
        let b = build_layer_graph(n, m).unwrap();
        out.push((format!("B({n},{m})^2"), square(&b)));
        out.push((format!("B({n},{m})"), b));
    }
    out.push(("C8^2".into(), square(&Graph::cycle(8).unwrap())));
    out.push(("P7^2".into(), square(&Graph::path(7).unwrap())));
    // Petersen graph: outer 5-cycle, inner pentagram, spokes
    let mut petersen = Vec::new();
    for i in 0..5 {
        petersen.push((i, (i + 1) % 5));
        petersen.push((5 + i, 5 + (i + 2) % 5));
        petersen.push((i, 5 + i));
    }
    out.push(("Petersen".into(), from_pairs(10, &petersen)));
    let cube: Vec<(VertexId, VertexId)> = (0..8u32)
        .flat_map(|x| (0..3).map(move |b| (x, x ^ (1 << b))))
        .filter(|&(x, y)| x < y)
        .collect();
    out.push(("Q3".into(), from_pairs(8, &cube)));
    let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    out.push(("K3,3".into(), from_pairs(6, &k33)));
    let star: Vec<_> = (1..6).map(|x| (0, x)).collect();
    out.push(("K1,5".into(), from_pairs(6, &star)));
    let mut wheel: Vec<_> = (1..7).map(|x| (0, x)).collect();
    wheel.extend((1..7).map(|x| (x, x % 6 + 1)));
    out.push(("W7".into(), from_pairs(7, &wheel)));
    out.push(("bowtie".into(), from_pairs(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])));
    out.push(("2C3".into(), from_pairs(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])));
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for i in 0..30 {
        let n = 5 + i % 6;
        let p = [0.3, 0.45, 0.6][i % 3];
        out.push((format!("rand{i}"), random_connected(&mut rng, n, p)));
    }
    out
}
