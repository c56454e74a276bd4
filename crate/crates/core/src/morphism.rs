//! Explicit isomorphisms, a certifier for vertex maps, and the action of
//! `Sym(n)` (plus the layer swap) on subset-labelled graphs.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{self, degree_stats, Graph, GraphMeta, VertexId};
use crate::subset::{self, SubsetWord};

/// Why a vertex map is not an isomorphism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Refutation {
    /// Source vertices `u`, `v` whose adjacency is not preserved.
    Pair { u: VertexId, v: VertexId },
    VertexCount {
        source_vertices: usize,
        target_vertices: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certification {
    Unchecked,
    Certified,
    Refuted(Refutation),
}

/// A vertex map between two graphs and what is known about it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bijection {
    pub source: GraphMeta,
    pub target: GraphMeta,
    /// `map[u]` is the target id of source vertex `u`.
    pub map: Vec<VertexId>,
    pub status: Certification,
}

#[derive(Serialize)]
struct BijectionRecord<'a> {
    source: &'a GraphMeta,
    target: &'a GraphMeta,
    map: &'a [VertexId],
    certified: bool,
    refutation: Option<Refutation>,
}

impl Serialize for Bijection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let refutation = match &self.status {
            Certification::Refuted(r) => Some(*r),
            _ => None,
        };
        BijectionRecord {
            source: &self.source,
            target: &self.target,
            map: &self.map,
            certified: self.is_certified(),
            refutation,
        }
        .serialize(serializer)
    }
}

impl Bijection {
    pub fn unchecked(source: &Graph, target: &Graph, map: Vec<VertexId>) -> Bijection {
        Bijection {
            source: *source.meta(),
            target: *target.meta(),
            map,
            status: Certification::Unchecked,
        }
    }

    pub fn is_certified(&self) -> bool {
        self.status == Certification::Certified
    }

    /// Re-checks a certificate against the graphs it names: equal edge counts
    /// and every source edge landing on a target edge.
    pub fn replay(&self, source: &Graph, target: &Graph) -> bool {
        self.is_certified()
            && self.map.len() == source.vertex_count()
            && source.vertex_count() == target.vertex_count()
            && source.edge_count() == target.edge_count()
            && source
                .edges()
                .all(|(u, v)| target.has_edge(self.map[u as usize], self.map[v as usize]))
    }

    /// `other ∘ self` as a raw map.
    pub fn then(&self, other: &Bijection) -> Result<Vec<VertexId>> {
        if self.target.vertices != other.source.vertices || self.map.len() != self.target.vertices {
            return Err(Error::NotPermutation("maps cannot be composed".into()));
        }
        Ok(self.map.iter().map(|&t| other.map[t as usize]).collect())
    }
}

/// Decides whether `map` is an isomorphism from `source` onto `target`.
///
/// Checks that the map is a permutation, that every source edge maps to a
/// target edge, and that edge counts agree; for a bijection on finite simple
/// graphs this is equivalent to preserving adjacency both ways.
pub fn certify_bijection(source: &Graph, target: &Graph, map: Vec<VertexId>) -> Result<Bijection> {
    let mut b = Bijection::unchecked(source, target, map);
    if b.map.len() != source.vertex_count() {
        return Err(Error::NotPermutation(format!(
            "map has {} entries for {} source vertices",
            b.map.len(),
            source.vertex_count()
        )));
    }
    if source.vertex_count() != target.vertex_count() {
        b.status = Certification::Refuted(Refutation::VertexCount {
            source_vertices: source.vertex_count(),
            target_vertices: target.vertex_count(),
        });
        return Ok(b);
    }
    let mut inverse = vec![VertexId::MAX; target.vertex_count()];
    for (u, &t) in b.map.iter().enumerate() {
        if t as usize >= target.vertex_count() {
            return Err(Error::NotPermutation(format!("image {t} of {u} is not a target vertex")));
        }
        if inverse[t as usize] != VertexId::MAX {
            return Err(Error::NotPermutation(format!(
                "vertices {} and {u} both map to {t}",
                inverse[t as usize]
            )));
        }
        inverse[t as usize] = u as VertexId;
    }
    if let Some((u, v)) = source
        .edges()
        .find(|&(u, v)| !target.has_edge(b.map[u as usize], b.map[v as usize]))
    {
        b.status = Certification::Refuted(Refutation::Pair { u, v });
        return Ok(b);
    }
    if source.edge_count() != target.edge_count() {
        // every source edge is preserved, so some target edge has a non-adjacent preimage
        let (a, c) = target
            .edges()
            .find(|&(a, c)| !source.has_edge(inverse[a as usize], inverse[c as usize]))
            .ok_or_else(|| Error::Internal("edge counts differ but no witness found".into()))?;
        let (u, v) = (inverse[a as usize], inverse[c as usize]);
        b.status = Certification::Refuted(Refutation::Pair { u: u.min(v), v: u.max(v) });
        return Ok(b);
    }
    b.status = Certification::Certified;
    Ok(b)
}

/// A certified isomorphism together with the graphs it connects.
#[derive(Debug, Clone)]
pub struct Isomorphism {
    pub source: Graph,
    pub target: Graph,
    pub bijection: Bijection,
}

fn certified_or_internal(source: Graph, target: Graph, map: Vec<VertexId>) -> Result<Isomorphism> {
    let bijection = certify_bijection(&source, &target, map)?;
    match bijection.status {
        Certification::Certified => Ok(Isomorphism {
            source,
            target,
            bijection,
        }),
        Certification::Refuted(r) => Err(Error::Internal(format!(
            "{} -> {} failed certification: {r:?}",
            source.meta().name(),
            target.meta().name()
        ))),
        Certification::Unchecked => unreachable!(),
    }
}

/// The map from `B(n,m)²` onto `J(n+1, m+1)` that keeps `(m+1)`-sets and
/// sends an `m`-set `v` to `v ∪ {n+1}`, certified edge by edge.
pub fn layer_square_isomorphism(n: u32, m: u32) -> Result<Isomorphism> {
    let (source, target, map) = layer_square_candidate(n, m)?;
    certified_or_internal(source, target, map)
}

/// `(B(n,m)², J(n+1,m+1), map)` before certification.
pub fn layer_square_candidate(n: u32, m: u32) -> Result<(Graph, Graph, Vec<VertexId>)> {
    let layer = graph::build_layer_graph(n, m)?;
    let source = graph::square(&layer);
    let target = graph::build_johnson(n + 1, m + 1)?;
    let map = source
        .labels()
        .iter()
        .map(|&v| {
            let image = if v.len() == m + 1 {
                SubsetWord::from_bits(v.bits(), n + 1)?
            } else {
                v.with_element(n + 1, n + 1)?
            };
            // Johnson vertex ids are colex ranks
            Ok(subset::rank(image) as VertexId)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((source, target, map))
}

/// Complementation `a ↦ [n] \ a` from `J(n,m)` onto `J(n, n-m)`.
pub fn complementation_map(n: u32, m: u32) -> Result<Isomorphism> {
    let source = graph::build_johnson(n, m)?;
    let target = graph::build_johnson(n, n - m)?;
    let map = source
        .labels()
        .iter()
        .map(|&a| subset::rank(a.complement()) as VertexId)
        .collect();
    certified_or_internal(source, target, map)
}

/// A permutation of `[n]` in one-line notation (1-based images).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Permutation> {
        let n = images.len();
        if n == 0 || n > subset::MAX_GROUND as usize {
            return Err(Error::InvalidGround(n as u32));
        }
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i as usize > n || seen[i as usize] {
                return Err(Error::NotPermutation(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u8).collect(),
        })
    }

    pub fn identity(n: u32) -> Result<Permutation> {
        Permutation::new((1..=n).collect())
    }

    /// The transposition `(i j)`.
    pub fn transposition(n: u32, i: u32, j: u32) -> Result<Permutation> {
        let mut images: Vec<u32> = (1..=n).collect();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::ElementOutOfRange { element: i.max(j), ground_n: n });
        }
        images.swap(i as usize - 1, j as usize - 1);
        Permutation::new(images)
    }

    /// `i ↦ i + 1`, `n ↦ 1`.
    pub fn rotation(n: u32) -> Result<Permutation> {
        Permutation::new((1..=n).map(|i| i % n + 1).collect())
    }

    pub fn degree(&self) -> u32 {
        self.images.len() as u32
    }

    #[inline]
    pub fn image(&self, i: u32) -> u32 {
        u32::from(self.images[i as usize - 1])
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::GroundMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Permutation::new((1..=self.degree()).map(|i| self.image(other.image(i))).collect())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| i.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// `{p(i) : i ∈ a}`.
pub fn apply_permutation_to_vertex(p: &Permutation, a: SubsetWord) -> Result<SubsetWord> {
    if p.degree() != a.ground_n() {
        return Err(Error::GroundMismatch {
            left: p.degree(),
            right: a.ground_n(),
        });
    }
    let bits = a.elements().fold(0u64, |acc, i| acc | 1u64 << (p.image(i) - 1));
    Ok(SubsetWord::new_unchecked(bits, a.ground_n()))
}

/// A map on vertex labels used to generate a group action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Permutation(Permutation),
    /// `a ↦ [n] \ a`; an automorphism of `B(n,m)` exactly when `n = 2m+1`.
    LayerSwap,
}

impl Generator {
    pub fn apply(&self, a: SubsetWord) -> Result<SubsetWord> {
        match self {
            Generator::Permutation(p) => apply_permutation_to_vertex(p, a),
            Generator::LayerSwap => Ok(a.complement()),
        }
    }
}

/// The adjacent transpositions `(i i+1)`, which generate `Sym(n)`.
pub fn adjacent_transpositions(n: u32) -> Result<Vec<Generator>> {
    (1..n)
        .map(|i| Permutation::transposition(n, i, i + 1).map(Generator::Permutation))
        .collect()
}

/// Default generators for a graph: adjacent transpositions of its ground
/// set, plus the layer swap for `B(2m+1, m)`.
pub fn default_generators(g: &Graph) -> Result<Vec<Generator>> {
    let meta = g.meta();
    let mut gens = adjacent_transpositions(meta.n)?;
    if meta.family == graph::Family::Layer && !meta.squared && meta.n == 2 * meta.m + 1 {
        gens.push(Generator::LayerSwap);
    }
    Ok(gens)
}

/// Vertex permutations induced by `generators`, each checked to be an
/// automorphism of `g`.
pub fn induced_automorphisms(g: &Graph, generators: &[Generator]) -> Result<Vec<Vec<VertexId>>> {
    generators
        .iter()
        .enumerate()
        .map(|(gi, gen)| {
            let witness = |u: VertexId| {
                let v = g.neighbors(u).first().copied().unwrap_or(u);
                Error::NotAutomorphism {
                    generator: gi,
                    u: u.min(v),
                    v: u.max(v),
                }
            };
            let mut action = Vec::with_capacity(g.vertex_count());
            for u in 0..g.vertex_count() as VertexId {
                let image = gen.apply(g.label(u))?;
                action.push(g.id_of(image).ok_or_else(|| witness(u))?);
            }
            // labels are distinct and the generators injective, so `action`
            // is a permutation; edges must map to edges
            if let Some((u, v)) = g
                .edges()
                .find(|&(u, v)| !g.has_edge(action[u as usize], action[v as usize]))
            {
                return Err(Error::NotAutomorphism { generator: gi, u, v });
            }
            Ok(action)
        })
        .collect()
}

fn closure<T, F>(seed: T, actions: &[Vec<VertexId>], step: F, seen: &mut HashMap<T, ()>) -> Vec<T>
where
    T: Copy + Eq + std::hash::Hash,
    F: Fn(&[VertexId], T) -> T,
{
    let mut orbit = vec![seed];
    let mut queue = VecDeque::from([seed]);
    seen.insert(seed, ());
    while let Some(x) = queue.pop_front() {
        for action in actions {
            let y = step(action, x);
            if seen.insert(y, ()).is_none() {
                orbit.push(y);
                queue.push_back(y);
            }
        }
    }
    orbit
}

fn vertex_step(action: &[VertexId], v: VertexId) -> VertexId {
    action[v as usize]
}

fn edge_step(action: &[VertexId], (u, v): (VertexId, VertexId)) -> (VertexId, VertexId) {
    let (a, b) = (action[u as usize], action[v as usize]);
    (a.min(b), a.max(b))
}

/// Orbit of `seed` under the group generated by `generators`, sorted.
pub fn vertex_orbit(g: &Graph, seed: VertexId, generators: &[Generator]) -> Result<Vec<VertexId>> {
    g.check_vertex(seed)?;
    let actions = induced_automorphisms(g, generators)?;
    let mut orbit = closure(seed, &actions, vertex_step, &mut HashMap::new());
    orbit.sort_unstable();
    Ok(orbit)
}

/// Orbit of the edge `{u, v}`, sorted, each edge as `(lo, hi)`.
pub fn edge_orbit(
    g: &Graph,
    (u, v): (VertexId, VertexId),
    generators: &[Generator],
) -> Result<Vec<(VertexId, VertexId)>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.has_edge(u, v) {
        return Err(Error::MalformedGraph(format!("({u}, {v}) is not an edge")));
    }
    let actions = induced_automorphisms(g, generators)?;
    let mut orbit = closure((u.min(v), u.max(v)), &actions, edge_step, &mut HashMap::new());
    orbit.sort_unstable();
    Ok(orbit)
}

/// Partition of the vertices into orbits, each sorted, ordered by least element.
pub fn vertex_orbits(g: &Graph, generators: &[Generator]) -> Result<Vec<Vec<VertexId>>> {
    let actions = induced_automorphisms(g, generators)?;
    let mut seen = HashMap::new();
    let mut orbits = Vec::new();
    for v in 0..g.vertex_count() as VertexId {
        if !seen.contains_key(&v) {
            let mut orbit = closure(v, &actions, vertex_step, &mut seen);
            orbit.sort_unstable();
            orbits.push(orbit);
        }
    }
    Ok(orbits)
}

pub fn edge_orbits(g: &Graph, generators: &[Generator]) -> Result<Vec<Vec<(VertexId, VertexId)>>> {
    let actions = induced_automorphisms(g, generators)?;
    let mut seen = HashMap::new();
    let mut orbits = Vec::new();
    for e in g.edges() {
        if !seen.contains_key(&e) {
            let mut orbit = closure(e, &actions, edge_step, &mut seen);
            orbit.sort_unstable();
            orbits.push(orbit);
        }
    }
    Ok(orbits)
}

/// Outcome of a vertex-transitivity check.
///
/// `transitive` proves vertex-transitivity. A single orbit failing to appear
/// under a subgroup proves nothing; only `degree_witness` (two vertices of
/// different degree) refutes it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexTransitivity {
    pub transitive: bool,
    pub orbits: Vec<Vec<VertexId>>,
    pub degree_witness: Option<(VertexId, VertexId)>,
}

impl VertexTransitivity {
    pub fn refuted(&self) -> bool {
        self.degree_witness.is_some()
    }
}

pub fn check_vertex_transitive(g: &Graph, generators: &[Generator]) -> Result<VertexTransitivity> {
    let orbits = vertex_orbits(g, generators)?;
    let stats = degree_stats(g);
    let degree_witness = (!stats.regular).then(|| {
        let ids = 0..g.vertex_count() as VertexId;
        let lo = ids.clone().find(|&v| g.degree(v) == stats.min).unwrap();
        let hi = ids.clone().find(|&v| g.degree(v) == stats.max).unwrap();
        (lo.min(hi), lo.max(hi))
    });
    Ok(VertexTransitivity {
        transitive: orbits.len() == 1,
        orbits,
        degree_witness,
    })
}

/// Whether the generated group acts transitively on edges. Vacuously true
/// for edgeless graphs.
pub fn check_edge_transitive(g: &Graph, generators: &[Generator]) -> Result<bool> {
    let actions = induced_automorphisms(g, generators)?;
    let Some(first) = g.edges().next() else {
        return Ok(true);
    };
    let orbit = closure(first, &actions, edge_step, &mut HashMap::new());
    Ok(orbit.len() == g.edge_count())
}
