//! Maximum matchings, greedy maximal matchings and rainbow matchings.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Colour, ColourSet, EdgeId, GraphView, Vertex};
use crate::ratio::Ratio;

const NONE: usize = usize::MAX;

/// A set of pairwise vertex-disjoint edges of a parent graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    /// Edge ids, ascending.
    pub edges: Vec<EdgeId>,
    /// True when the edge colours are pairwise distinct.
    pub rainbow: bool,
}

impl Matching {
    fn from_edges(g: &GraphView<'_>, mut edges: Vec<EdgeId>) -> Self {
        edges.sort_unstable();
        let mut colours: Vec<_> = edges.iter().map(|&e| g.edge(e).colour).collect();
        colours.sort_unstable();
        let rainbow = colours.windows(2).all(|w| w[0] != w[1]);
        Matching { edges, rainbow }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Maximum-cardinality matching of a general graph (Edmonds' blossom
/// algorithm, O(V^3)). Deterministic for a given edge order.
pub fn max_matching(g: &GraphView<'_>) -> Matching {
    let verts: Vec<Vertex> = g.vertices().collect();
    let mut local = vec![NONE; g.graph().vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let n = verts.len();
    let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); n];
    for (id, e) in g.edges() {
        let (a, b) = (local[e.u], local[e.v]);
        adj[a].push((b, id));
        adj[b].push((a, id));
    }

    let mut blossom = Blossom::new(&adj);
    // Greedy start; the augmenting phase only has to fix what is left.
    for (_, e) in g.edges() {
        let (a, b) = (local[e.u], local[e.v]);
        if blossom.mate[a] == NONE && blossom.mate[b] == NONE {
            blossom.mate[a] = b;
            blossom.mate[b] = a;
        }
    }
    for root in 0..n {
        if blossom.mate[root] == NONE {
            if let Some(end) = blossom.find_path(root) {
                blossom.augment(end);
            }
        }
    }

    // Simple graph: the matched pair determines the edge.
    let edges = (0..n)
        .filter(|&v| blossom.mate[v] != NONE && v < blossom.mate[v])
        .map(|v| {
            adj[v]
                .iter()
                .find(|&&(w, _)| w == blossom.mate[v])
                .map(|&(_, id)| id)
                .expect("matched pair is adjacent")
        })
        .collect();
    Matching::from_edges(g, edges)
}

struct Blossom<'a> {
    adj: &'a [Vec<(usize, EdgeId)>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<(usize, EdgeId)>]) -> Self {
        let n = adj.len();
        Blossom {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            let m = self.mate[v];
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[m]] = true;
            self.parent[v] = child;
            child = m;
            v = self.parent[m];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.adj.len();
        self.used.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(to, _) in &self.adj[v] {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}

/// Maximal matching built by scanning `order` and keeping every edge
/// disjoint from those already kept. Ids outside the view are skipped.
pub fn greedy_maximal_matching(g: &GraphView<'_>, order: &[EdgeId]) -> Matching {
    let mut covered = vec![false; g.graph().vertex_count()];
    let mut edges = Vec::new();
    for &id in order {
        if !g.contains_edge(id) {
            continue;
        }
        let e = g.edge(id);
        if !covered[e.u] && !covered[e.v] {
            covered[e.u] = true;
            covered[e.v] = true;
            edges.push(id);
        }
    }
    Matching::from_edges(g, edges)
}

/// The greedy rainbow matching fell short of its target.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("maximal rainbow matching has {} edges, {target} required", found.len())]
pub struct RainbowShortfall {
    pub target: usize,
    /// The maximal rainbow matching that was found.
    pub found: Matching,
}

/// Maximal rainbow matching in edge-id order, truncated to `r` edges when
/// it is large enough.
pub fn greedy_rainbow_matching(g: &GraphView<'_>, r: usize) -> Result<Matching, RainbowShortfall> {
    let mut covered = vec![false; g.graph().vertex_count()];
    let mut used = vec![false; g.graph().colour_count()];
    let mut edges = Vec::new();
    for (id, e) in g.edges() {
        if !covered[e.u] && !covered[e.v] && !used[e.colour] {
            covered[e.u] = true;
            covered[e.v] = true;
            used[e.colour] = true;
            edges.push(id);
        }
    }
    if edges.len() >= r {
        edges.truncate(r);
        Ok(Matching::from_edges(g, edges))
    } else {
        Err(RainbowShortfall {
            target: r,
            found: Matching::from_edges(g, edges),
        })
    }
}

/// Which hypotheses of the rainbow-matching guarantee hold for a graph:
/// at least `r n / 3` edges, maximum degree at most `n / 10`, and no
/// `(n/10)`-rich colour. Informational only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowMatchingHypotheses {
    pub enough_edges: bool,
    pub max_degree_small: bool,
    pub no_dense_colour: bool,
}

pub fn rainbow_matching_hypotheses(g: &GraphView<'_>, r: usize) -> RainbowMatchingHypotheses {
    let n = g.vertex_count();
    let max_deg = g.degrees().into_iter().max().unwrap_or(0);
    let max_class = g.colour_counts().into_iter().max().unwrap_or(0);
    RainbowMatchingHypotheses {
        enough_edges: 3 * g.edge_count() >= r * n,
        max_degree_small: 10 * max_deg <= n,
        // A colour class of a proper colouring is a matching, so its edge
        // count is its matching number; (n/10)-rich means at least n^2/10.
        no_dense_colour: 10 * max_class < n * n,
    }
}

/// One reserved rainbow matching together with the vertex and colour
/// bookkeeping the rich-branch assembly needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReservedMatching {
    pub matching: Matching,
    /// One endpoint (the smaller id) of every matching edge.
    pub z: Vec<Vertex>,
    /// The view's vertices outside `z`.
    pub x: Vec<Vertex>,
    /// Colours of the parent graph not used by the matching.
    pub unused_colours: ColourSet,
}

impl ReservedMatching {
    fn new(g: &GraphView<'_>, matching: Matching) -> Self {
        let mut z: Vec<_> = matching
            .edges
            .iter()
            .map(|&e| g.edge(e).u.min(g.edge(e).v))
            .collect();
        z.sort_unstable();
        let x = g
            .vertices()
            .filter(|v| z.binary_search(v).is_err())
            .collect();
        let used: HashSet<Colour> = matching.edges.iter().map(|&e| g.edge(e).colour).collect();
        let unused_colours = (0..g.graph().colour_count())
            .filter(|c| !used.contains(c))
            .collect();
        ReservedMatching {
            matching,
            z,
            x,
            unused_colours,
        }
    }
}

/// Thresholds used when reserving rainbow matchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReservationParams {
    /// Colours at least this rich are matched last, one edge each.
    pub rich_ratio: Ratio,
    /// Vertices with at least this fraction of `n` as degree (after the rich
    /// colours are removed) are matched by a dedicated edge.
    pub degree_ratio: Ratio,
}

impl Default for ReservationParams {
    fn default() -> Self {
        ReservationParams {
            rich_ratio: Ratio::of(1, 20),
            degree_ratio: Ratio::of(1, 20),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReservationStage {
    /// Greedy extraction of the core matchings.
    Extract,
    /// Adding an edge at each removed high-degree vertex.
    VertexExtension,
    /// Adding an edge of each removed rich colour.
    ColourExtension,
}

impl fmt::Display for ReservationStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReservationStage::Extract => "extract",
            ReservationStage::VertexExtension => "vertex-extension",
            ReservationStage::ColourExtension => "colour-extension",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("matching reservation failed at stage {stage}, matching {index}: {detail}")]
pub struct ReservationError {
    pub stage: ReservationStage,
    pub index: usize,
    pub detail: String,
}

/// Output of [`disjoint_rainbow_matchings`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reservation {
    pub matchings: Vec<ReservedMatching>,
    /// The rich colours set aside and matched last.
    pub rich_colours: Vec<Colour>,
    /// The high-degree vertices set aside and matched second.
    pub high_degree: Vec<Vertex>,
    /// Size of each core matching extracted greedily.
    pub core_size: usize,
    pub notes: Vec<String>,
}

/// `count` pairwise edge-disjoint rainbow matchings with `r` edges each.
///
/// Up to `r` rich colours are set aside first, then high-degree vertices up
/// to the remaining budget; core matchings of the leftover size are taken
/// greedily from what remains, and each is then extended by one edge per
/// set-aside vertex and one edge per set-aside colour. Every choice takes the
/// first feasible edge id.
pub fn disjoint_rainbow_matchings(
    g: &GraphView<'_>,
    r: usize,
    count: usize,
    params: ReservationParams,
) -> Result<Reservation, ReservationError> {
    let n = g.vertex_count();
    let mut notes = Vec::new();

    let rich_needed = params.rich_ratio.ceil_mul(n);
    let rich_colours: Vec<Colour> = g
        .colour_counts()
        .iter()
        .enumerate()
        .filter(|&(c, _)| {
            let nu = max_matching(&g.with_colours(&ColourSet::from([c]))).len();
            nu >= rich_needed && nu > 0
        })
        .map(|(c, _)| c)
        .take(r)
        .collect();
    let s = rich_colours.len();
    let rich_set: ColourSet = rich_colours.iter().copied().collect();
    let without_rich = g.without_colours(&rich_set);

    let degree_needed = params.degree_ratio.ceil_mul(n);
    let deg = without_rich.degrees();
    let high_degree: Vec<Vertex> = without_rich
        .vertices()
        .filter(|&v| deg[v] >= degree_needed && deg[v] > 0)
        .take(r - s)
        .collect();
    if !high_degree.is_empty() && high_degree.len() != s {
        notes.push(format!(
            "core graph drops the {} set-aside high-degree vertices (not the first {} as the index range would suggest)",
            high_degree.len(),
            s
        ));
    }
    let core_graph = without_rich.drop_vertices(&high_degree);
    let t = r - s - high_degree.len();

    let mut used = vec![false; g.graph().edge_count()];
    let mut matchings: Vec<Vec<EdgeId>> = Vec::with_capacity(count);
    for i in 0..count {
        let remainder = core_graph.retain_edges(|e, _| !used[e]);
        let m = greedy_rainbow_matching(&remainder, t).map_err(|short| ReservationError {
            stage: ReservationStage::Extract,
            index: i,
            detail: short.to_string(),
        })?;
        for &e in &m.edges {
            used[e] = true;
        }
        matchings.push(m.edges);
    }

    let nv = g.graph().vertex_count();
    let set_aside: HashSet<Vertex> = high_degree.iter().copied().collect();
    for (i, m) in matchings.iter_mut().enumerate() {
        let mut covered = vec![false; nv];
        let mut colours: HashSet<Colour> = HashSet::new();
        for &e in m.iter() {
            let edge = g.edge(e);
            covered[edge.u] = true;
            covered[edge.v] = true;
            colours.insert(edge.colour);
        }
        for &v in &high_degree {
            let pick = g
                .graph()
                .incident(v)
                .iter()
                .copied()
                .filter(|&e| without_rich.contains_edge(e) && !used[e])
                .find(|&e| {
                    let edge = g.edge(e);
                    let x = edge.other(v);
                    !covered[x] && !set_aside.contains(&x) && !colours.contains(&edge.colour)
                })
                .ok_or_else(|| ReservationError {
                    stage: ReservationStage::VertexExtension,
                    index: i,
                    detail: format!("no free edge at vertex {v}"),
                })?;
            let edge = g.edge(pick);
            covered[edge.u] = true;
            covered[edge.v] = true;
            colours.insert(edge.colour);
            used[pick] = true;
            m.push(pick);
        }
        for &c in &rich_colours {
            let pick = g
                .edges()
                .find(|&(e, edge)| {
                    edge.colour == c && !used[e] && !covered[edge.u] && !covered[edge.v]
                })
                .map(|(e, _)| e)
                .filter(|_| !colours.contains(&c))
                .ok_or_else(|| ReservationError {
                    stage: ReservationStage::ColourExtension,
                    index: i,
                    detail: format!("no free edge of colour {c}"),
                })?;
            let edge = g.edge(pick);
            covered[edge.u] = true;
            covered[edge.v] = true;
            colours.insert(c);
            used[pick] = true;
            m.push(pick);
        }
    }

    let matchings = matchings
        .into_iter()
        .map(|edges| ReservedMatching::new(g, Matching::from_edges(g, edges)))
        .collect();
    Ok(Reservation {
        matchings,
        rich_colours,
        high_degree,
        core_size: t,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_one_factorization, gen_rainbow, ColouredGraph};

    fn graph(n: usize, edges: &[(usize, usize)]) -> ColouredGraph {
        ColouredGraph::new(n, edges.iter().enumerate().map(|(i, &(u, v))| (u, v, i))).unwrap()
    }

    fn petersen() -> ColouredGraph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        graph(10, &edges)
    }

    /// Exhaustive maximum matching: include-or-skip over edge ids.
    fn brute_nu(g: &GraphView<'_>) -> usize {
        fn go(edges: &[(usize, usize)], i: usize, covered: &mut Vec<bool>) -> usize {
            if i == edges.len() {
                return 0;
            }
            let mut best = go(edges, i + 1, covered);
            let (u, v) = edges[i];
            if !covered[u] && !covered[v] {
                covered[u] = true;
                covered[v] = true;
                best = best.max(1 + go(edges, i + 1, covered));
                covered[u] = false;
                covered[v] = false;
            }
            best
        }
        let edges: Vec<_> = g.edges().map(|(_, e)| (e.u, e.v)).collect();
        go(&edges, 0, &mut vec![false; g.graph().vertex_count()])
    }

    fn assert_matching(g: &GraphView<'_>, m: &Matching) {
        let mut covered = HashSet::new();
        for &e in &m.edges {
            assert!(g.contains_edge(e));
            let edge = g.edge(e);
            assert!(covered.insert(edge.u) && covered.insert(edge.v));
        }
    }

    #[test]
    fn max_matching_small_graphs() {
        let k3 = gen_rainbow(3);
        assert_eq!(max_matching(&k3.view()).len(), 1);
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(max_matching(&p4.view()).len(), 2);
        let p = petersen();
        assert_eq!(brute_nu(&p.view()), 5);
        let m = max_matching(&p.view());
        assert_matching(&p.view(), &m);
        assert_eq!(m.len(), 5);
    }

    #[test]
    fn max_matching_needs_blossom() {
        // Two triangles joined by a path: greedy picks 0-1 and gets stuck
        // unless the odd cycle is shrunk.
        let g = graph(6, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(max_matching(&g.view()).len(), 3);
        let g = graph(
            8,
            &[
                (1, 2),
                (0, 1),
                (0, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (3, 7),
            ],
        );
        assert_eq!(max_matching(&g.view()).len(), brute_nu(&g.view()));
    }

    #[test]
    fn max_matching_respects_view() {
        let g = gen_rainbow(6);
        let v = g.view().drop_vertices(&[0, 1]);
        let m = max_matching(&v);
        assert_eq!(m.len(), 2);
        assert_matching(&v, &m);
    }

    #[test]
    fn greedy_maximal_examples() {
        let empty = graph(3, &[]);
        assert!(greedy_maximal_matching(&empty.view(), &[]).is_empty());
        let p4 = graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let m = greedy_maximal_matching(&p4.view(), &[0, 1, 2]);
        assert_eq!(m.edges, vec![0, 2]);
        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(
            greedy_maximal_matching(&star.view(), &[3, 1, 0, 2]).len(),
            1
        );
    }

    #[test]
    fn greedy_rainbow_examples() {
        let g = gen_rainbow(6);
        assert!(greedy_rainbow_matching(&g.view(), 0).unwrap().is_empty());
        let m = greedy_rainbow_matching(&g.view(), 3).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.rainbow);
        assert_matching(&g.view(), &m);

        let k4 = gen_one_factorization(4).unwrap();
        let short = greedy_rainbow_matching(&k4.view(), 2).unwrap_err();
        assert_eq!(short.found.len(), 1);
        assert_eq!(short.target, 2);
    }

    #[test]
    fn k4_has_no_rainbow_perfect_matching() {
        // Each of the three perfect matchings of K_4 is one colour class.
        let g = gen_one_factorization(4).unwrap();
        let edges: Vec<_> = g.edges().to_vec();
        for i in 0..6 {
            for j in i + 1..6 {
                let (a, b) = (edges[i], edges[j]);
                if !a.touches(b.u) && !a.touches(b.v) {
                    assert_eq!(a.colour, b.colour);
                }
            }
        }
    }

    #[test]
    fn greedy_rainbow_is_maximal() {
        let g = crate::graph::gen_random_proper(9, 3);
        let m = greedy_rainbow_matching(&g.view(), 100).unwrap_err().found;
        let covered: HashSet<_> = m
            .edges
            .iter()
            .flat_map(|&e| [g.edge(e).u, g.edge(e).v])
            .collect();
        let colours: HashSet<_> = m.edges.iter().map(|&e| g.edge(e).colour).collect();
        for e in g.edges() {
            assert!(
                covered.contains(&e.u) || covered.contains(&e.v) || colours.contains(&e.colour)
            );
        }
    }

    fn check_reservation(g: &GraphView<'_>, res: &Reservation, r: usize, count: usize) {
        assert_eq!(res.matchings.len(), count);
        let mut seen = HashSet::new();
        for rm in &res.matchings {
            assert_eq!(rm.matching.len(), r);
            assert!(rm.matching.rainbow);
            assert_matching(g, &rm.matching);
            for &e in &rm.matching.edges {
                assert!(seen.insert(e), "edge {e} reused");
            }
            assert_eq!(rm.z.len(), r);
            for &e in &rm.matching.edges {
                let edge = g.edge(e);
                assert_eq!(
                    rm.z.contains(&edge.u) as u8 + rm.z.contains(&edge.v) as u8,
                    1
                );
            }
            assert_eq!(rm.x.len() + rm.z.len(), g.vertex_count());
            for c in 0..g.graph().colour_count() {
                let on_matching = rm.matching.edges.iter().any(|&e| g.edge(e).colour == c);
                assert_eq!(rm.unused_colours.contains(&c), !on_matching);
            }
        }
    }

    #[test]
    fn reservation_of_empty_matchings() {
        let g = gen_rainbow(5);
        let res =
            disjoint_rainbow_matchings(&g.view(), 0, 3, ReservationParams::default()).unwrap();
        check_reservation(&g.view(), &res, 0, 3);
        assert!(res.matchings.iter().all(|m| m.unused_colours.len() == 10));
    }

    #[test]
    fn reservation_on_one_factorization() {
        let g = gen_one_factorization(6).unwrap();
        let res =
            disjoint_rainbow_matchings(&g.view(), 1, 2, ReservationParams::default()).unwrap();
        check_reservation(&g.view(), &res, 1, 2);
        assert_eq!(res.rich_colours, vec![0]);
    }

    #[test]
    fn reservation_on_rainbow_k8() {
        // Every colour of a rainbow K_8 is a single edge, so with the default
        // 1/20 threshold each one counts as rich and can serve one matching
        // only; the second extension has nothing left.
        let g = gen_rainbow(8);
        let err =
            disjoint_rainbow_matchings(&g.view(), 1, 2, ReservationParams::default()).unwrap_err();
        assert_eq!(err.stage, ReservationStage::ColourExtension);
        assert_eq!(err.index, 1);

        let relaxed = ReservationParams {
            rich_ratio: Ratio::of(1, 2),
            ..ReservationParams::default()
        };
        let res = disjoint_rainbow_matchings(&g.view(), 1, 2, relaxed).unwrap();
        check_reservation(&g.view(), &res, 1, 2);
        let c0 = g.edge(res.matchings[0].matching.edges[0]).colour;
        let c1 = g.edge(res.matchings[1].matching.edges[0]).colour;
        assert_ne!(c0, c1);
        assert_eq!(res.high_degree, vec![0]);
    }

    #[test]
    fn reservation_core_extraction_on_larger_graph() {
        let g = crate::graph::gen_random_proper(30, 11);
        let params = ReservationParams {
            rich_ratio: Ratio::of(1, 1),
            degree_ratio: Ratio::of(1, 1),
        };
        let res = disjoint_rainbow_matchings(&g.view(), 3, 4, params).unwrap();
        assert_eq!(res.core_size, 3);
        check_reservation(&g.view(), &res, 3, 4);
    }

    #[test]
    fn reservation_is_deterministic() {
        let g = crate::graph::gen_random_proper(20, 5);
        let a = disjoint_rainbow_matchings(&g.view(), 2, 3, ReservationParams::default());
        let b = disjoint_rainbow_matchings(&g.view(), 2, 3, ReservationParams::default());
        assert_eq!(a, b);
    }

    #[test]
    fn hypotheses_report() {
        let g = gen_rainbow(40);
        let h = rainbow_matching_hypotheses(&g.view(), 1);
        assert!(h.enough_edges);
        assert!(!h.max_degree_small);
        assert!(h.no_dense_colour);
    }

    #[test]
    fn random_graphs_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let n = rng.random_range(1..=9);
            let p: f64 = rng.random();
            let edges: Vec<_> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.random_bool(p))
                .collect();
            let g = graph(n, &edges);
            let m = max_matching(&g.view());
            assert_matching(&g.view(), &m);
            assert_eq!(m.len(), brute_nu(&g.view()));
        }
    }
}
