//! Independent checker for decompositions given as raw edge-index lists.
//!
//! Nothing here calls into the producers; the only shared pieces are the
//! graph type and a union-find.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColouredGraph, EdgeId};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeCheck {
    pub edge_count: usize,
    pub spanning: bool,
    pub rainbow: bool,
    pub acyclic: bool,
    pub connected: bool,
}

impl TreeCheck {
    pub fn passed(&self) -> bool {
        self.spanning && self.rainbow && self.acyclic && self.connected
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub trees: Vec<TreeCheck>,
    pub pairwise_disjoint: bool,
    pub tree_count: usize,
    pub first_failure: Option<String>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn check_tree(g: &ColouredGraph, edges: &[EdgeId]) -> TreeCheck {
    let n = g.vertex_count();
    let mut dsu = UnionFind::new(n);
    let mut acyclic = true;
    let mut seen_colours = vec![false; g.colour_count()];
    let mut rainbow = true;
    for &e in edges {
        let edge = g.edge(e);
        if !dsu.union(edge.u, edge.v) {
            acyclic = false;
        }
        if std::mem::replace(&mut seen_colours[edge.colour], true) {
            rainbow = false;
        }
    }
    let connected = (1..n).all(|v| dsu.same(0, v));
    TreeCheck {
        edge_count: edges.len(),
        spanning: edges.len() + 1 == n.max(1) && connected,
        rainbow,
        acyclic,
        connected,
    }
}

/// Checks that every list is a rainbow spanning tree of `g` and that the
/// lists are pairwise edge-disjoint. An index outside `0..m` is an input
/// error rather than a failed check.
pub fn verify_decomposition(
    g: &ColouredGraph,
    trees: &[Vec<EdgeId>],
) -> Result<VerificationReport> {
    let m = g.edge_count();
    for (i, tree) in trees.iter().enumerate() {
        if let Some(&e) = tree.iter().find(|&&e| e >= m) {
            return Err(Error::invalid(format!(
                "tree {i} references edge {e}, but the graph has {m} edges"
            )));
        }
    }

    let checks: Vec<TreeCheck> = trees.iter().map(|t| check_tree(g, t)).collect();
    let mut first_failure = None;
    for (i, c) in checks.iter().enumerate() {
        let what = [
            (c.spanning, "not spanning"),
            (c.connected, "not connected"),
            (c.acyclic, "contains a cycle"),
            (c.rainbow, "repeats a colour"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok);
        if let Some((_, what)) = what {
            first_failure = Some(format!("tree {i}: {what} ({} edges)", c.edge_count));
            break;
        }
    }

    let mut owner: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut pairwise_disjoint = true;
    'outer: for (i, tree) in trees.iter().enumerate() {
        for &e in tree {
            if let Some(&j) = owner.get(&e) {
                pairwise_disjoint = false;
                if first_failure.is_none() {
                    let msg = if i == j {
                        format!("tree {i}: edge {e} listed twice")
                    } else {
                        format!("trees {j} and {i} share edge {e}")
                    };
                    first_failure = Some(msg);
                }
                break 'outer;
            }
            owner.insert(e, i);
        }
    }

    Ok(VerificationReport {
        tree_count: trees.len(),
        trees: checks,
        pairwise_disjoint,
        first_failure,
    })
}
