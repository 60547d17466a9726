//! Generators and exhaustive references shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashMap;

use rainbow_core::ColouredGraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// `G(n, p)` with each edge given a random colour from `0..palette` that is
/// still free at both ends; edges with no free colour are dropped.
pub fn sparse_proper<R: Rng>(rng: &mut R, n: usize, p: f64, palette: usize) -> ColouredGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let mut used = vec![vec![false; palette]; n];
    let mut triples = Vec::new();
    for (u, v) in pairs {
        if !rng.random_bool(p) {
            continue;
        }
        let free: Vec<usize> = (0..palette)
            .filter(|&c| !used[u][c] && !used[v][c])
            .collect();
        let Some(&c) = free.get(rng.random_range(0..free.len().max(1))) else {
            continue;
        };
        used[u][c] = true;
        used[v][c] = true;
        triples.push((u, v, c));
    }
    ColouredGraph::new(n, triples).expect("generated edges are valid")
}

/// Random simple graph with arbitrary colours (not necessarily proper).
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, colours: usize) -> ColouredGraph {
    let mut triples = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                triples.push((u, v, rng.random_range(0..colours)));
            }
        }
    }
    ColouredGraph::new(n, triples).expect("generated edges are valid")
}

/// Maximum matching size by memoised search over vertex subsets. Only
/// edges whose id satisfies `keep` count. Fine up to about 20 vertices.
pub fn exhaustive_matching(g: &ColouredGraph, keep: impl Fn(usize) -> bool) -> usize {
    let n = g.vertex_count();
    assert!(n <= 24);
    let mut adj = vec![0u32; n];
    for (id, e) in g.edges().iter().enumerate() {
        if keep(id) {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
        }
    }
    fn best(mask: u32, adj: &[u32], memo: &mut HashMap<u32, usize>) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&b) = memo.get(&mask) {
            return b;
        }
        let v = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << v);
        let mut b = best(rest, adj, memo);
        let mut nbrs = adj[v] & rest;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros();
            b = b.max(1 + best(rest & !(1 << u), adj, memo));
            nbrs &= nbrs - 1;
        }
        memo.insert(mask, b);
        b
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    best(full, &adj, &mut HashMap::new())
}
