//! Edge-coloured graphs, index-based subgraph views, the `.rcg` text
//! format, and colouring generators.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Colour = usize;
pub type EdgeId = usize;

/// A set of colour ids, iterated in ascending order.
pub type ColourSet = BTreeSet<Colour>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub colour: Colour,
}

impl Edge {
    pub fn other(&self, x: Vertex) -> Vertex {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }
}

/// An immutable simple graph on vertices `0..n` whose edges carry dense
/// colour ids `0..colour_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouredGraph {
    n: usize,
    edges: Vec<Edge>,
    colour_count: usize,
    incident: Vec<Vec<EdgeId>>,
}

impl ColouredGraph {
    /// Builds a graph from `(u, v, colour)` triples. Endpoints are stored
    /// with `u < v`; colour ids are re-densified in order of first
    /// occurrence.
    pub fn new(
        n: usize,
        triples: impl IntoIterator<Item = (Vertex, Vertex, Colour)>,
    ) -> Result<Self> {
        let triples: Vec<_> = triples.into_iter().collect();
        Self::build(
            n,
            triples.into_iter().enumerate().map(|(i, t)| (i + 1, t)),
            |i, msg| Error::invalid(format!("edge {}: {msg}", i - 1)),
        )
    }

    fn build(
        n: usize,
        triples: impl Iterator<Item = (usize, (Vertex, Vertex, Colour))>,
        err: impl Fn(usize, String) -> Error,
    ) -> Result<Self> {
        let mut edges = Vec::new();
        let mut seen = HashSet::new();
        let mut relabel: HashMap<Colour, Colour> = HashMap::new();
        for (tag, (a, b, c)) in triples {
            if a == b {
                return Err(err(tag, format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(err(
                    tag,
                    format!("vertex id {} out of range for n = {n}", a.max(b)),
                ));
            }
            let (u, v) = (a.min(b), a.max(b));
            if !seen.insert((u, v)) {
                return Err(err(tag, format!("duplicate edge {u} {v}")));
            }
            let next = relabel.len();
            let colour = *relabel.entry(c).or_insert(next);
            edges.push(Edge { u, v, colour });
        }
        let mut incident = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            incident[e.u].push(i);
            incident[e.v].push(i);
        }
        Ok(ColouredGraph {
            n,
            edges,
            colour_count: relabel.len(),
            incident,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn colour_count(&self) -> usize {
        self.colour_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: Vertex) -> &[EdgeId] {
        &self.incident[v]
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn view(&self) -> GraphView<'_> {
        GraphView::full(self)
    }

    /// Serialises to the `.rcg` format, one edge per line in edge-id order.
    pub fn to_rcg(&self) -> String {
        let mut out = String::with_capacity(12 * (self.edges.len() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.colour);
        }
        out
    }
}

/// Parses the `.rcg` format: a header `n m`, then `m` lines `u v c`.
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_coloured_graph(text: &str) -> Result<ColouredGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header line \"n m\""))?;
    let header = parse_fields::<2>(header_line, header)?;
    let (n, m) = (header[0], header[1]);

    let mut triples = Vec::with_capacity(m);
    let mut last_line = header_line;
    for (line, text) in lines {
        if triples.len() == m {
            return Err(Error::parse(
                line,
                format!("more than the declared {m} edges"),
            ));
        }
        let f = parse_fields::<3>(line, text)?;
        triples.push((line, (f[0], f[1], f[2])));
        last_line = line;
    }
    if triples.len() < m {
        return Err(Error::parse(
            last_line,
            format!("expected {m} edges, found {}", triples.len()),
        ));
    }
    ColouredGraph::build(n, triples.into_iter(), Error::parse)
}

fn parse_fields<const K: usize>(line: usize, text: &str) -> Result<[usize; K]> {
    let mut out = [0usize; K];
    let mut fields = text.split_whitespace();
    for slot in out.iter_mut() {
        let field = fields
            .next()
            .ok_or_else(|| Error::parse(line, format!("expected {K} fields")))?;
        *slot = field
            .parse()
            .map_err(|_| Error::parse(line, format!("not a non-negative integer: {field:?}")))?;
    }
    if fields.next().is_some() {
        return Err(Error::parse(line, format!("expected {K} fields")));
    }
    Ok(out)
}

/// Result of [`validate_proper`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropernessReport {
    pub is_proper: bool,
    /// `(vertex, colour)` pairs with two or more incident edges of that
    /// colour, sorted.
    pub violations: Vec<(Vertex, Colour)>,
    pub is_complete: bool,
}

pub fn validate_proper(g: &ColouredGraph) -> PropernessReport {
    let mut violations = Vec::new();
    let mut seen = vec![usize::MAX; g.colour_count()];
    let mut reported = vec![usize::MAX; g.colour_count()];
    for v in 0..g.vertex_count() {
        for &e in g.incident(v) {
            let c = g.edge(e).colour;
            if seen[c] == v {
                if reported[c] != v {
                    reported[c] = v;
                    violations.push((v, c));
                }
            } else {
                seen[c] = v;
            }
        }
    }
    violations.sort_unstable();
    PropernessReport {
        is_proper: violations.is_empty(),
        violations,
        is_complete: g.is_complete(),
    }
}

/// Sorted, duplicate-free edge ids of some parent graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct EdgeSubset(Vec<EdgeId>);

impl EdgeSubset {
    pub fn new(g: &ColouredGraph, ids: impl IntoIterator<Item = EdgeId>) -> Result<Self> {
        let mut ids: Vec<_> = ids.into_iter().collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("edge subset contains a repeated edge id"));
        }
        if let Some(&bad) = ids.iter().find(|&&e| e >= g.edge_count()) {
            return Err(Error::invalid(format!("edge id {bad} out of range")));
        }
        Ok(EdgeSubset(ids))
    }

    /// Trusted constructor for ids already known to be valid.
    pub(crate) fn from_sorted(ids: Vec<EdgeId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        EdgeSubset(ids)
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.0.binary_search(&id).is_ok()
    }
}

/// A subgraph of a [`ColouredGraph`]: an active vertex set plus a sorted
/// list of edge ids with both endpoints active. Vertex, edge and colour ids
/// are those of the parent, so views compose across pipeline stages.
#[derive(Debug, Clone)]
pub struct GraphView<'g> {
    graph: &'g ColouredGraph,
    active: Vec<bool>,
    vertex_count: usize,
    edges: Vec<EdgeId>,
}

impl<'g> GraphView<'g> {
    pub fn full(graph: &'g ColouredGraph) -> Self {
        GraphView {
            graph,
            active: vec![true; graph.vertex_count()],
            vertex_count: graph.vertex_count(),
            edges: (0..graph.edge_count()).collect(),
        }
    }

    /// View with the given vertices active and the given edges, dropping
    /// any edge with an inactive endpoint.
    pub fn from_parts(
        graph: &'g ColouredGraph,
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = EdgeId>,
    ) -> Self {
        let mut active = vec![false; graph.vertex_count()];
        for v in vertices {
            active[v] = true;
        }
        let mut edges: Vec<_> = edges
            .into_iter()
            .filter(|&e| {
                let edge = graph.edge(e);
                active[edge.u] && active[edge.v]
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        let vertex_count = active.iter().filter(|&&a| a).count();
        GraphView {
            graph,
            active,
            vertex_count,
            edges,
        }
    }

    pub fn graph(&self) -> &'g ColouredGraph {
        self.graph
    }

    /// `|G|`, the number of active vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &'g Edge {
        self.graph.edge(id)
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &'g Edge)> + '_ {
        let g = self.graph;
        self.edges.iter().map(move |&e| (e, g.edge(e)))
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.active.get(v).copied().unwrap_or(false)
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edges.binary_search(&id).is_ok()
    }

    /// Active vertices, ascending.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.active
            .iter()
            .enumerate()
            .filter_map(|(v, &a)| a.then_some(v))
    }

    /// Degree of every parent vertex within this view (zero if inactive).
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.graph.vertex_count()];
        for (_, e) in self.edges() {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        let deg = self.degrees();
        self.vertices().map(|v| deg[v]).min().unwrap_or(0)
    }

    /// Colours present on at least one edge of the view.
    pub fn colours(&self) -> ColourSet {
        self.edges().map(|(_, e)| e.colour).collect()
    }

    /// Edge count per parent colour id.
    pub fn colour_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.graph.colour_count()];
        for (_, e) in self.edges() {
            counts[e.colour] += 1;
        }
        counts
    }

    pub fn edge_subset(&self) -> EdgeSubset {
        EdgeSubset::from_sorted(self.edges.clone())
    }

    fn with_edges(&self, edges: Vec<EdgeId>) -> Self {
        GraphView {
            graph: self.graph,
            active: self.active.clone(),
            vertex_count: self.vertex_count,
            edges,
        }
    }

    /// Same vertices, edges `E(self) \ f`.
    pub fn remove_subgraph(&self, f: &EdgeSubset) -> Self {
        self.without_edges(f.ids().iter().copied())
    }

    pub fn without_edges(&self, ids: impl IntoIterator<Item = EdgeId>) -> Self {
        let drop: HashSet<EdgeId> = ids.into_iter().collect();
        self.retain_edges(|e, _| !drop.contains(&e))
    }

    pub fn retain_edges(&self, mut keep: impl FnMut(EdgeId, &Edge) -> bool) -> Self {
        let g = self.graph;
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&e| keep(e, g.edge(e)))
            .collect();
        self.with_edges(edges)
    }

    /// Same vertices, only edges whose colour is in `colours` (`G_U`).
    pub fn with_colours(&self, colours: &ColourSet) -> Self {
        let mask = colour_mask(self.graph, colours);
        self.retain_edges(|_, e| mask[e.colour])
    }

    /// Same vertices, edges whose colour is not in `colours`.
    pub fn without_colours(&self, colours: &ColourSet) -> Self {
        let mask = colour_mask(self.graph, colours);
        self.retain_edges(|_, e| !mask[e.colour])
    }

    /// `G[A]`: restrict to the active vertices in `a`.
    pub fn induced(&self, a: &[Vertex]) -> Self {
        let mut keep = vec![false; self.graph.vertex_count()];
        for &v in a {
            if self.contains_vertex(v) {
                keep[v] = true;
            }
        }
        self.restrict(keep)
    }

    /// `G - A`: drop the vertices in `a` and their edges.
    pub fn drop_vertices(&self, a: &[Vertex]) -> Self {
        let mut keep = self.active.clone();
        for &v in a {
            if v < keep.len() {
                keep[v] = false;
            }
        }
        self.restrict(keep)
    }

    fn restrict(&self, active: Vec<bool>) -> Self {
        let g = self.graph;
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&e| active[g.edge(e).u] && active[g.edge(e).v])
            .collect();
        let vertex_count = active.iter().filter(|&&a| a).count();
        GraphView {
            graph: g,
            active,
            vertex_count,
            edges,
        }
    }
}

fn colour_mask(g: &ColouredGraph, colours: &ColourSet) -> Vec<bool> {
    let mut mask = vec![false; g.colour_count()];
    for &c in colours {
        if c < mask.len() {
            mask[c] = true;
        }
    }
    mask
}

/// `G_U` as an edge subset.
pub fn colour_subgraph(g: &GraphView<'_>, colours: &ColourSet) -> Result<EdgeSubset> {
    if let Some(&bad) = colours.iter().find(|&&c| c >= g.graph().colour_count()) {
        return Err(Error::invalid(format!("unknown colour id {bad}")));
    }
    Ok(g.with_colours(colours).edge_subset())
}

fn complete_pairs(n: usize) -> impl Iterator<Item = (Vertex, Vertex)> {
    (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
}

/// Round-robin 1-factorization of `K_n`: vertex `n-1` is fixed and the
/// others rotate, giving `n-1` perfect-matching colour classes. Edges are
/// listed in lexicographic order.
pub fn gen_one_factorization(n: usize) -> Result<ColouredGraph> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::invalid(format!(
            "one-factorization needs an even vertex count >= 2, got {n}"
        )));
    }
    let k = n - 1;
    let colour_of = |u: Vertex, v: Vertex| -> Colour {
        if v == k {
            u
        } else {
            // u + v = 2r (mod k); 2 is invertible because k is odd.
            (u + v) * k.div_ceil(2) % k
        }
    };
    ColouredGraph::new(n, complete_pairs(n).map(|(u, v)| (u, v, colour_of(u, v))))
}

/// Greedy proper colouring of `K_n`: edges are visited in a seeded shuffle
/// and each takes the least colour free at both endpoints. Uses at most
/// `2n - 3` colours. ChaCha8 keeps the sequence platform-independent.
pub fn gen_random_proper(n: usize, seed: u64) -> ColouredGraph {
    let pairs: Vec<_> = complete_pairs(n).collect();
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut used: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut colour = vec![0; pairs.len()];
    for i in order {
        let (u, v) = pairs[i];
        let c = (0..)
            .find(|&c| {
                !used[u].get(c).copied().unwrap_or(false)
                    && !used[v].get(c).copied().unwrap_or(false)
            })
            .unwrap();
        for x in [u, v] {
            if used[x].len() <= c {
                used[x].resize(c + 1, false);
            }
            used[x][c] = true;
        }
        colour[i] = c;
    }
    ColouredGraph::new(n, pairs.iter().zip(colour).map(|(&(u, v), c)| (u, v, c)))
        .expect("complete graph triples are valid")
}

/// `K_n` with every edge a distinct colour.
pub fn gen_rainbow(n: usize) -> ColouredGraph {
    ColouredGraph::new(
        n,
        complete_pairs(n).enumerate().map(|(i, (u, v))| (u, v, i)),
    )
    .expect("complete graph triples are valid")
}

/// Generator families exposed to the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    OneFactorization,
    RandomProper,
    Rainbow,
}

impl Family {
    pub fn generate(self, n: usize, seed: u64) -> Result<ColouredGraph> {
        match self {
            Family::OneFactorization => gen_one_factorization(n),
            Family::RandomProper => Ok(gen_random_proper(n, seed)),
            Family::Rainbow => Ok(gen_rainbow(n)),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::OneFactorization => "one-factorization",
            Family::RandomProper => "random-proper",
            Family::Rainbow => "rainbow",
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "one-factorization" => Ok(Family::OneFactorization),
            "random-proper" => Ok(Family::RandomProper),
            "rainbow" => Ok(Family::Rainbow),
            _ => Err(Error::invalid(format!("unknown family {s:?}"))),
        }
    }
}
