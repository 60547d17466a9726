//! Rainbow forests and spanning trees.
//!
//! A rainbow forest is a common independent set of two matroids on the edge
//! set: the graphic matroid (acyclic sets) and the colour partition matroid
//! (at most one edge per colour). Maximum rainbow forests come from the
//! augmenting-path matroid intersection algorithm; a rainbow spanning tree
//! exists iff the maximum has `|V| - 1` edges.
//!
//! The exhaustive oracles at the bottom of the module are for small graphs
//! only and exist to cross-check the fast path.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, GraphView, Vertex};
use crate::partitions::{block_count, SetPartitions};
use crate::union_find::UnionFind;

/// Largest vertex count accepted by [`partition_condition_holds`].
pub const PARTITION_ORACLE_CAP: usize = 9;
/// Largest vertex count accepted by [`brute_force_tree_packing`].
pub const PACKING_ORACLE_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowForest {
    /// Edge ids, ascending.
    pub edges: Vec<EdgeId>,
    /// Component label (the smallest vertex of the component) for every
    /// vertex of the parent graph.
    pub component: Vec<Vertex>,
}

impl RainbowForest {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowTree {
    /// Edge ids, ascending.
    pub edges: Vec<EdgeId>,
    /// Smallest vertex of the spanned set; `None` for the empty vertex set.
    pub root: Option<Vertex>,
    /// Parent of each parent-graph vertex in the tree rooted at `root`;
    /// `None` for the root and for vertices outside the spanned set.
    pub parent: Vec<Option<Vertex>>,
}

impl RainbowTree {
    /// Wraps `edges` as a tree over the vertices of `g`, or `None` if they do
    /// not form a spanning tree of those vertices.
    pub fn from_edges(g: &GraphView<'_>, mut edges: Vec<EdgeId>) -> Option<Self> {
        edges.sort_unstable();
        let n = g.graph().vertex_count();
        if edges.len() + 1 != g.vertex_count().max(1) {
            return None;
        }
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for &e in &edges {
            let edge = g.edge(e);
            if !g.contains_vertex(edge.u) || !g.contains_vertex(edge.v) {
                return None;
            }
            adj[edge.u].push(edge.v);
            adj[edge.v].push(edge.u);
        }
        let root = g.vertices().next();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut reached = 0;
        if let Some(r) = root {
            seen[r] = true;
            reached = 1;
            let mut queue = VecDeque::from([r]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        reached += 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        (reached == g.vertex_count()).then_some(RainbowTree {
            edges,
            root,
            parent,
        })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Degree of every parent-graph vertex in the tree.
    pub fn degrees(&self, g: &GraphView<'_>) -> Vec<usize> {
        let mut deg = vec![0; g.graph().vertex_count()];
        for &e in &self.edges {
            deg[g.edge(e).u] += 1;
            deg[g.edge(e).v] += 1;
        }
        deg
    }
}

/// The current common independent set and the forest structure the
/// exchange graph is built from.
struct ForestState<'a, 'g> {
    g: &'a GraphView<'g>,
    in_set: Vec<bool>,
    colour_owner: Vec<Option<EdgeId>>,
    adj: Vec<Vec<(Vertex, EdgeId)>>,
    component: Vec<usize>,
}

impl<'a, 'g> ForestState<'a, 'g> {
    fn new(g: &'a GraphView<'g>, forest: &[EdgeId]) -> Self {
        let graph = g.graph();
        let mut in_set = vec![false; graph.edge_count()];
        let mut colour_owner = vec![None; graph.colour_count()];
        let mut adj = vec![Vec::new(); graph.vertex_count()];
        for &e in forest {
            let edge = g.edge(e);
            in_set[e] = true;
            colour_owner[edge.colour] = Some(e);
            adj[edge.u].push((edge.v, e));
            adj[edge.v].push((edge.u, e));
        }
        let mut state = ForestState {
            g,
            in_set,
            colour_owner,
            adj,
            component: Vec::new(),
        };
        state.component = state.label_components(None);
        state
    }

    /// Component label of every vertex in the forest, optionally ignoring one
    /// forest edge.
    fn label_components(&self, skip: Option<EdgeId>) -> Vec<usize> {
        let n = self.adj.len();
        let mut label = vec![usize::MAX; n];
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = s;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &(w, e) in &self.adj[v] {
                    if Some(e) != skip && label[w] == usize::MAX {
                        label[w] = s;
                        stack.push(w);
                    }
                }
            }
        }
        label
    }

    /// Vertices on the `edge.u` side when `forest_edge` is deleted.
    fn split_side(&self, forest_edge: EdgeId) -> Vec<bool> {
        let edge = self.g.edge(forest_edge);
        let mut side = vec![false; self.adj.len()];
        side[edge.u] = true;
        let mut stack = vec![edge.u];
        while let Some(v) = stack.pop() {
            for &(w, e) in &self.adj[v] {
                if e != forest_edge && !side[w] {
                    side[w] = true;
                    stack.push(w);
                }
            }
        }
        side
    }

    /// Shortest path in the exchange graph from an edge addable to the
    /// forest to an edge of an unused colour. Ties go to the smaller edge id
    /// because sources and arcs are explored in ascending id order.
    fn shortest_augmenting_path(&self) -> Option<Vec<EdgeId>> {
        let g = self.g;
        let m = g.graph().edge_count();
        let outside: Vec<EdgeId> = g
            .edge_ids()
            .iter()
            .copied()
            .filter(|&e| !self.in_set[e])
            .collect();
        let mut prev = vec![usize::MAX; m];
        let mut visited = vec![false; m];
        let mut queue = VecDeque::new();
        for &z in &outside {
            let edge = g.edge(z);
            if self.component[edge.u] != self.component[edge.v] {
                visited[z] = true;
                queue.push_back(z);
            }
        }
        while let Some(node) = queue.pop_front() {
            if !self.in_set[node] {
                let colour = g.edge(node).colour;
                match self.colour_owner[colour] {
                    None => {
                        let mut path = vec![node];
                        let mut cur = node;
                        while prev[cur] != usize::MAX {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return Some(path);
                    }
                    Some(y) if !visited[y] => {
                        visited[y] = true;
                        prev[y] = node;
                        queue.push_back(y);
                    }
                    Some(_) => {}
                }
            } else {
                // I - y + z is acyclic iff z reconnects the two halves that
                // removing y leaves behind.
                let comp = self.component[g.edge(node).u];
                let side = self.split_side(node);
                for &z in &outside {
                    if visited[z] {
                        continue;
                    }
                    let edge = g.edge(z);
                    if self.component[edge.u] == comp
                        && self.component[edge.v] == comp
                        && side[edge.u] != side[edge.v]
                    {
                        visited[z] = true;
                        prev[z] = node;
                        queue.push_back(z);
                    }
                }
            }
        }
        None
    }
}

/// Greedy rainbow forest in edge-id order: keep an edge when it closes no
/// cycle and its colour is unused.
fn greedy_forest(g: &GraphView<'_>) -> Vec<EdgeId> {
    let mut uf = UnionFind::new(g.graph().vertex_count());
    let mut used = vec![false; g.graph().colour_count()];
    let mut out = Vec::new();
    for (id, e) in g.edges() {
        if !used[e.colour] && !uf.same(e.u, e.v) {
            uf.union(e.u, e.v);
            used[e.colour] = true;
            out.push(id);
        }
    }
    out
}

/// Shortest augmenting path for the rainbow forest `forest` of `g`, if any.
/// The path alternates edges to add and edges to drop, starting and ending
/// with an edge to add.
pub fn augmenting_path(g: &GraphView<'_>, forest: &[EdgeId]) -> Option<Vec<EdgeId>> {
    ForestState::new(g, forest).shortest_augmenting_path()
}

/// A maximum-cardinality rainbow forest of `g`.
pub fn max_rainbow_forest(g: &GraphView<'_>) -> RainbowForest {
    // Greedy insertion is exactly the sequence of length-zero augmentations
    // taken in id order, so starting from it changes nothing but speed.
    augment_to_maximum(g, greedy_forest(g))
}

/// Grows `start`, which must be a rainbow forest of `g`, into a maximum
/// one. Callers use the start forest to steer which maximum is reached.
///
/// # Panics
///
/// If `start` is not a rainbow forest of `g`.
pub fn augment_to_maximum(g: &GraphView<'_>, start: Vec<EdgeId>) -> RainbowForest {
    let graph = g.graph();
    let mut uf = UnionFind::new(graph.vertex_count());
    let mut used = vec![false; graph.colour_count()];
    for &e in &start {
        let edge = graph.edge(e);
        assert!(g.contains_edge(e), "edge {e} is not in the graph");
        assert!(uf.union(edge.u, edge.v), "start forest has a cycle");
        assert!(
            !std::mem::replace(&mut used[edge.colour], true),
            "start forest repeats a colour"
        );
    }
    let mut forest = start;
    loop {
        let state = ForestState::new(g, &forest);
        let Some(path) = state.shortest_augmenting_path() else {
            let component = state.component;
            forest.sort_unstable();
            return RainbowForest {
                edges: forest,
                component,
            };
        };
        let mut in_set = state.in_set;
        for e in path {
            in_set[e] = !in_set[e];
        }
        forest = g
            .edge_ids()
            .iter()
            .copied()
            .filter(|&e| in_set[e])
            .collect();
    }
}

pub fn find_rainbow_spanning_tree(g: &GraphView<'_>) -> Option<RainbowTree> {
    let forest = max_rainbow_forest(g);
    if forest.len() + 1 < g.vertex_count() {
        return None;
    }
    RainbowTree::from_edges(g, forest.edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCheck {
    pub holds: bool,
    /// A partition into `s` parts crossed by fewer than `s - 1` distinct
    /// colours, when one exists.
    pub witness: Option<Vec<Vec<Vertex>>>,
}

/// Checks, by enumerating every partition of the vertices, that each
/// partition into `s` parts has at least `s - 1` distinct colours on edges
/// between parts.
pub fn partition_condition_holds(g: &GraphView<'_>) -> Result<PartitionCheck> {
    partition_condition_holds_capped(g, PARTITION_ORACLE_CAP)
}

pub fn partition_condition_holds_capped(g: &GraphView<'_>, cap: usize) -> Result<PartitionCheck> {
    let verts: Vec<Vertex> = g.vertices().collect();
    if verts.len() > cap {
        return Err(Error::OracleCap {
            oracle: "partition-condition",
            n: verts.len(),
            cap,
        });
    }
    let mut local = vec![usize::MAX; g.graph().vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let edges: Vec<(usize, usize, usize)> = g
        .edges()
        .map(|(_, e)| (local[e.u], local[e.v], e.colour))
        .collect();
    let mut stamp = vec![0usize; g.graph().colour_count()];
    let mut round = 0;
    let mut partitions = SetPartitions::new(verts.len());
    while let Some(blocks) = partitions.next_partition() {
        round += 1;
        let s = block_count(blocks);
        let mut crossing = 0;
        for &(a, b, c) in &edges {
            if blocks[a] != blocks[b] && stamp[c] != round {
                stamp[c] = round;
                crossing += 1;
            }
        }
        if crossing + 1 < s {
            let mut parts = vec![Vec::new(); s];
            for (i, &b) in blocks.iter().enumerate() {
                parts[b].push(verts[i]);
            }
            return Ok(PartitionCheck {
                holds: false,
                witness: Some(parts),
            });
        }
    }
    Ok(PartitionCheck {
        holds: true,
        witness: None,
    })
}

/// Every rainbow spanning tree of `g` (as sorted edge-id lists), by
/// include/exclude search over edges in id order.
pub fn enumerate_rainbow_spanning_trees(g: &GraphView<'_>) -> Result<Vec<Vec<EdgeId>>> {
    let n = g.vertex_count();
    if n > PACKING_ORACLE_CAP {
        return Err(Error::OracleCap {
            oracle: "tree-packing",
            n,
            cap: PACKING_ORACLE_CAP,
        });
    }
    let verts: Vec<Vertex> = g.vertices().collect();
    let mut local = vec![usize::MAX; g.graph().vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let edges: Vec<(EdgeId, usize, usize, usize)> = g
        .edges()
        .map(|(id, e)| (id, local[e.u], local[e.v], e.colour))
        .collect();

    struct Search<'e> {
        edges: &'e [(EdgeId, usize, usize, usize)],
        need: usize,
        chosen: Vec<EdgeId>,
        used: Vec<bool>,
        out: Vec<Vec<EdgeId>>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize, label: &[usize]) {
            if self.chosen.len() == self.need {
                self.out.push(self.chosen.clone());
                return;
            }
            if self.chosen.len() + (self.edges.len() - i) < self.need {
                return;
            }
            let (id, a, b, c) = self.edges[i];
            if !self.used[c] && label[a] != label[b] {
                let (from, to) = (label[b], label[a]);
                let merged: Vec<usize> = label
                    .iter()
                    .map(|&l| if l == from { to } else { l })
                    .collect();
                self.used[c] = true;
                self.chosen.push(id);
                self.go(i + 1, &merged);
                self.chosen.pop();
                self.used[c] = false;
            }
            self.go(i + 1, label);
        }
    }

    let mut search = Search {
        edges: &edges,
        need: n.saturating_sub(1),
        chosen: Vec::new(),
        used: vec![false; g.graph().colour_count()],
        out: Vec::new(),
    };
    let label: Vec<usize> = (0..n).collect();
    search.go(0, &label);
    Ok(search.out)
}

/// Exact maximum number (capped at `limit`) of pairwise edge-disjoint
/// rainbow spanning trees, by branch and bound over the enumerated trees.
/// On one vertex the empty tree can be repeated, so the answer is `limit`.
pub fn brute_force_tree_packing(g: &GraphView<'_>, limit: usize) -> Result<usize> {
    let trees = enumerate_rainbow_spanning_trees(g)?;
    let need = g.vertex_count().saturating_sub(1);
    if need == 0 {
        return Ok(if trees.is_empty() { 0 } else { limit });
    }
    // At most 28 edges on 8 vertices: one bit per view edge.
    let position: std::collections::HashMap<EdgeId, usize> = g
        .edge_ids()
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i))
        .collect();
    let masks: Vec<u64> = trees
        .iter()
        .map(|t| t.iter().fold(0u64, |m, e| m | 1 << position[e]))
        .collect();
    let mut by_edge: Vec<Vec<usize>> = vec![Vec::new(); g.edge_count()];
    for (t, &mask) in masks.iter().enumerate() {
        let mut bits = mask;
        while bits != 0 {
            by_edge[bits.trailing_zeros() as usize].push(t);
            bits &= bits - 1;
        }
    }

    struct Packing<'p> {
        masks: &'p [u64],
        by_edge: &'p [Vec<usize>],
        need: u32,
        limit: usize,
        best: usize,
    }

    impl Packing<'_> {
        fn go(&mut self, avail: u64, count: usize) {
            self.best = self.best.max(count);
            if self.best >= self.limit || avail == 0 {
                return;
            }
            if count + (avail.count_ones() / self.need) as usize <= self.best {
                return;
            }
            let e = avail.trailing_zeros() as usize;
            let by_edge = self.by_edge;
            for &t in &by_edge[e] {
                let mask = self.masks[t];
                if mask & avail == mask {
                    self.go(avail & !mask, count + 1);
                    if self.best >= self.limit {
                        return;
                    }
                }
            }
            self.go(avail & !(1 << e), count);
        }
    }

    let all = if g.edge_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.edge_count()) - 1
    };
    let mut packing = Packing {
        masks: &masks,
        by_edge: &by_edge,
        need: need as u32,
        limit,
        best: 0,
    };
    packing.go(all, 0);
    Ok(packing.best.min(limit))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_one_factorization, gen_rainbow, ColouredGraph};

    fn mono_triangle() -> ColouredGraph {
        ColouredGraph::new(3, [(0, 1, 0), (0, 2, 0), (1, 2, 0)]).unwrap()
    }

    fn mono_path() -> ColouredGraph {
        ColouredGraph::new(3, [(0, 1, 0), (1, 2, 0)]).unwrap()
    }

    /// Independent check: acyclic by union-find, distinct colours, and edge
    /// count `|V| - 1` when spanning.
    fn is_rainbow_forest(g: &GraphView<'_>, edges: &[EdgeId]) -> bool {
        let mut uf = UnionFind::new(g.graph().vertex_count());
        let mut colours: Vec<_> = edges.iter().map(|&e| g.edge(e).colour).collect();
        colours.sort_unstable();
        colours.dedup();
        colours.len() == edges.len()
            && edges
                .iter()
                .all(|&e| g.contains_edge(e) && uf.union(g.edge(e).u, g.edge(e).v))
    }

    #[test]
    fn forest_examples() {
        let g = mono_triangle();
        assert_eq!(max_rainbow_forest(&g.view()).len(), 1);
        let g = gen_rainbow(4);
        assert_eq!(max_rainbow_forest(&g.view()).len(), 3);
        let g = gen_one_factorization(4).unwrap();
        let f = max_rainbow_forest(&g.view());
        assert_eq!(f.len(), 3);
        assert!(is_rainbow_forest(&g.view(), &f.edges));
        assert!(f.component.iter().all(|&c| c == 0));
    }

    #[test]
    fn spanning_tree_examples() {
        let g = gen_rainbow(3);
        let t = find_rainbow_spanning_tree(&g.view()).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.root, Some(0));
        assert!(find_rainbow_spanning_tree(&mono_path().view()).is_none());
        let single = ColouredGraph::new(1, []).unwrap();
        let t = find_rainbow_spanning_tree(&single.view()).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.parent, vec![None]);
    }

    #[test]
    fn augmentation_is_needed() {
        let g = ColouredGraph::new(4, [(0, 1, 0), (0, 2, 1), (1, 2, 2), (2, 3, 0)]).unwrap();
        // Greedy: 0-1 (c0), 0-2 (c1); 1-2 cycles, 2-3 has c0. Max is 3:
        // 0-2, 1-2, 2-3.
        assert_eq!(greedy_forest(&g.view()).len(), 2);
        let f = max_rainbow_forest(&g.view());
        assert_eq!(f.len(), 3);
        assert!(is_rainbow_forest(&g.view(), &f.edges));
        assert!(augmenting_path(&g.view(), &f.edges).is_none());
    }

    #[test]
    fn tree_respects_vertex_subset() {
        let g = gen_rainbow(6);
        let v = g.view().drop_vertices(&[0, 5]);
        let t = find_rainbow_spanning_tree(&v).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(t.root, Some(1));
        assert!(t.edges.iter().all(|&e| v.contains_edge(e)));
    }

    #[test]
    fn partition_oracle_examples() {
        let g = gen_rainbow(3);
        assert!(partition_condition_holds(&g.view()).unwrap().holds);
        let check = partition_condition_holds(&mono_path().view()).unwrap();
        assert!(!check.holds);
        assert_eq!(check.witness, Some(vec![vec![0], vec![1], vec![2]]));
        let g = gen_one_factorization(4).unwrap();
        assert!(partition_condition_holds(&g.view()).unwrap().holds);
        let big = gen_rainbow(10);
        assert!(matches!(
            partition_condition_holds(&big.view()),
            Err(Error::OracleCap { cap: 9, .. })
        ));
    }

    #[test]
    fn packing_oracle_examples() {
        assert_eq!(
            brute_force_tree_packing(&gen_rainbow(2).view(), 10).unwrap(),
            1
        );
        let k4 = gen_one_factorization(4).unwrap();
        // The four rainbow trees of this colouring are the stars, and any
        // two stars of K_4 share an edge.
        assert_eq!(brute_force_tree_packing(&k4.view(), 10).unwrap(), 1);
        let k6 = gen_one_factorization(6).unwrap();
        assert_eq!(brute_force_tree_packing(&k6.view(), 10).unwrap(), 3);
        assert_eq!(brute_force_tree_packing(&k6.view(), 2).unwrap(), 2);
        assert_eq!(
            brute_force_tree_packing(&mono_triangle().view(), 10).unwrap(),
            0
        );
        assert!(brute_force_tree_packing(&gen_rainbow(9).view(), 10).is_err());
    }

    #[test]
    fn k4_tree_counts() {
        // K_4 has 16 spanning trees; in the 1-factorization a spanning tree
        // fails to be rainbow iff it contains both edges of one colour
        // class, and each class lies in 4 of the 16 (the other two classes
        // contribute the third edge). 16 - 3 * 4 = 4 rainbow trees, and
        // these are the four stars: a path on four vertices always uses two
        // disjoint edges, which share a colour.
        let g = gen_one_factorization(4).unwrap();
        assert_eq!(
            enumerate_rainbow_spanning_trees(&g.view()).unwrap().len(),
            4
        );
        assert_eq!(
            enumerate_rainbow_spanning_trees(&gen_rainbow(4).view())
                .unwrap()
                .len(),
            16
        );
    }

    #[test]
    fn forest_maximum_matches_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..150 {
            let n = rng.random_range(2..=6);
            let k = rng.random_range(1..=5);
            let mut triples = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(0.6) {
                        triples.push((u, v, rng.random_range(0..k)));
                    }
                }
            }
            let g = ColouredGraph::new(n, triples).unwrap();
            let f = max_rainbow_forest(&g.view());
            assert!(is_rainbow_forest(&g.view(), &f.edges));
            assert!(augmenting_path(&g.view(), &f.edges).is_none());
            // Exhaustive maximum over all edge subsets.
            let m = g.edge_count();
            let ids: Vec<_> = (0..m).collect();
            let best = (0u32..1 << m)
                .filter(|mask| {
                    let chosen: Vec<_> = ids
                        .iter()
                        .copied()
                        .filter(|&i| mask >> i & 1 == 1)
                        .collect();
                    is_rainbow_forest(&g.view(), &chosen)
                })
                .map(|mask| mask.count_ones() as usize)
                .max()
                .unwrap();
            assert_eq!(f.len(), best);
        }
    }
}
