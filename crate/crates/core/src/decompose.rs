//! Extraction of edge-disjoint rainbow spanning trees.
//!
//! Two extraction strategies share one output contract:
//!
//! * The constructive pipeline ([`Mode::Paper`]) classifies the colouring,
//!   then either peels leaf-constrained trees off a robustly-coloured graph
//!   or, when most colours are rich, reserves one rainbow matching per tree
//!   for the scarce colours and peels the rest of each tree inside the
//!   colours that matching leaves unused. Its constants make the tree target
//!   zero at any feasible size unless overridden.
//! * The greedy peel ([`Mode::Practical`]) repeatedly extracts any rainbow
//!   spanning tree from what remains.
//!
//! A run never aborts on a stage failure: the completed prefix is returned
//! with diagnostics, since every tree in it is still valid.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::colour::{classify, rich_colours, Branch, BranchDecision};
use crate::error::{Error, Result};
use crate::graph::{ColourSet, ColouredGraph, EdgeId, GraphView, Vertex};
use crate::matching::{disjoint_rainbow_matchings, ReservationParams};
use crate::rainbow::{augment_to_maximum, find_rainbow_spanning_tree, RainbowTree};
use crate::ratio::{floor_square_ratio, Ratio};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// The constructive pipeline with its constants.
    Paper,
    /// Greedy peeling with the branch decision kept for reporting.
    Practical,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Paper => "paper",
            Mode::Practical => "practical",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Mode::Paper),
            "practical" => Ok(Mode::Practical),
            _ => Err(Error::invalid(format!("unknown mode {s:?}"))),
        }
    }
}

/// Every constant of the pipeline, defaulting to the values under which the
/// construction is guaranteed to work for large `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub mode: Mode,
    pub alpha: Ratio,
    pub beta: Ratio,
    /// Overrides the computed number of trees to aim for.
    pub ell: Option<usize>,
    /// Cap on trees in practical mode; `n / 2` when unset.
    pub limit: Option<usize>,
    /// Target graphs are expected to have minimum degree at least
    /// `(1 - alpha * degree_slack) n`.
    pub degree_slack: Ratio,
    /// Leaf-constrained trees are built with `alpha * max_deg_frac`, which
    /// bounds their maximum degree by `(1 - alpha * max_deg_frac) n`.
    pub max_deg_frac: Ratio,
    /// Vertices whose degree in the trees so far reaches
    /// `alpha * high_deg_frac * n` must be leaves of the next tree.
    pub high_deg_frac: Ratio,
    /// Robust branch: `ell = beta^2 n / ell_divisor`.
    pub ell_divisor: u64,
    /// Rich branch: `ell = alpha^2 n / rich_ell_divisor`.
    pub rich_ell_divisor: u64,
    /// Rich branch expects at least `n - alpha n / rich_gap` rich colours.
    pub rich_gap: u64,
    /// Overall guarantee: `n / theorem_divisor` trees.
    pub theorem_divisor: u64,
    pub reservation: ReservationParams,
    /// Recorded with every result; the pipeline itself is deterministic.
    pub seed: u64,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            mode: Mode::Practical,
            alpha: Ratio::of(1, 8),
            beta: Ratio::of(1, 19200),
            ell: None,
            limit: None,
            degree_slack: Ratio::of(1, 30),
            max_deg_frac: Ratio::of(1, 6),
            high_deg_frac: Ratio::of(1, 12),
            ell_divisor: 2500,
            rich_ell_divisor: 1_000_000,
            rich_gap: 150,
            theorem_divisor: 1_000_000_000_000,
            reservation: ReservationParams::default(),
            seed: 0,
        }
    }
}

impl PipelineParams {
    pub fn paper() -> Self {
        PipelineParams {
            mode: Mode::Paper,
            ..Self::default()
        }
    }

    pub fn practical() -> Self {
        Self::default()
    }

    /// Minimum tree target imposed by the mode.
    fn ell_floor(&self, n: usize) -> usize {
        match self.mode {
            Mode::Paper => 0,
            Mode::Practical => n / 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, r) in [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("degree_slack", self.degree_slack),
            ("max_deg_frac", self.max_deg_frac),
            ("high_deg_frac", self.high_deg_frac),
            ("reservation.rich_ratio", self.reservation.rich_ratio),
            ("reservation.degree_ratio", self.reservation.degree_ratio),
        ] {
            if !r.is_unit_interval() {
                return Err(Error::invalid(format!("{name} = {r} must lie in (0, 1]")));
            }
        }
        for (name, d) in [
            ("ell_divisor", self.ell_divisor),
            ("rich_ell_divisor", self.rich_ell_divisor),
            ("rich_gap", self.rich_gap),
            ("theorem_divisor", self.theorem_divisor),
        ] {
            if d == 0 {
                return Err(Error::invalid(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    /// Wall-clock time per stage, in execution order.
    pub timings: Vec<(String, Duration)>,
    pub diagnostics: Vec<String>,
    /// Number of trees the run aimed for, when it had a fixed target.
    pub ell: Option<usize>,
    /// The run could not deliver what its constants promise (typically a
    /// tree target of zero) and says so here rather than returning a bare
    /// empty result.
    pub degenerate: bool,
    /// The branch decision fell back to `Rich` without establishing either
    /// case.
    pub fallback: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionResult {
    pub trees: Vec<RainbowTree>,
    pub branch: Option<Branch>,
    pub params: PipelineParams,
    pub stats: Stats,
}

impl DecompositionResult {
    fn new(params: &PipelineParams, branch: Option<Branch>) -> Self {
        DecompositionResult {
            trees: Vec::new(),
            branch,
            params: params.clone(),
            stats: Stats {
                seed: params.seed,
                ..Stats::default()
            },
        }
    }

    pub fn tree_edges(&self) -> Vec<Vec<EdgeId>> {
        self.trees.iter().map(|t| t.edges.clone()).collect()
    }

    fn note(&mut self, message: impl Into<String>) {
        self.stats.diagnostics.push(message.into());
    }
}

fn timed<T>(timings: &mut Vec<(String, Duration)>, stage: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.push((stage.to_string(), start.elapsed()));
    out
}

/// A rainbow spanning tree of a well-coloured graph of high minimum degree.
/// The hypotheses are reported, not required: the matroid-intersection
/// finder decides existence outright.
pub fn rainbow_tree_well_coloured(
    g: &GraphView<'_>,
    alpha: Ratio,
) -> (Option<RainbowTree>, Vec<String>) {
    let n = g.vertex_count();
    let mut notes = Vec::new();
    let min_degree_needed = n - alpha.floor_mul(n);
    if g.min_degree() < min_degree_needed && n > 1 {
        notes.push(format!(
            "minimum degree {} is below (1 - {alpha}) n = {min_degree_needed}",
            g.min_degree()
        ));
    }
    let double = alpha.mul_int(2);
    if double.is_unit_interval() {
        let forced = rich_colours(g, double);
        if crate::colour::certify_well_coloured(g, double, &forced).is_err() {
            notes.push(format!("no {double}-well-coloured certificate found"));
        }
    }
    (find_rainbow_spanning_tree(g), notes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "stage", content = "vertex")]
pub enum LeafStage {
    /// The requested leaf set contains a vertex outside the graph.
    LeafSet(Vertex),
    /// No fresh pendant edge for a vertex that must be a leaf.
    PendantLeaf(Vertex),
    /// No fresh pendant edge for a padding vertex of `B`.
    PendantPadding(Vertex),
    /// The graph left after removing `B` and the pendant colours has no
    /// rainbow spanning tree.
    CoreTree,
}

impl std::fmt::Display for LeafStage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LeafStage::LeafSet(v) => write!(f, "leaf-set (vertex {v} not in graph)"),
            LeafStage::PendantLeaf(v) => write!(f, "pendant-leaf (vertex {v})"),
            LeafStage::PendantPadding(v) => write!(f, "pendant-padding (vertex {v})"),
            LeafStage::CoreTree => f.write_str("core-tree"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("leaf-constrained tree failed at stage {stage}")]
pub struct LeafTreeError {
    pub stage: LeafStage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafTree {
    pub tree: RainbowTree,
    /// The padded leaf set; every vertex in it hangs off a pendant edge.
    pub b: Vec<Vertex>,
    pub pendants: Vec<EdgeId>,
}

/// A rainbow spanning tree of `g` in which every vertex of `a` is a leaf.
///
/// `a` is padded with the smallest remaining vertices to a set `B` of
/// `ceil(alpha n)` vertices. Each vertex of `B` gets a pendant edge to a
/// fresh vertex in a fresh colour (leaves of `a` may attach anywhere outside
/// `a`, padding vertices only outside `B`); a rainbow spanning tree of
/// `g - B` without the pendant colours then completes the tree. Every
/// non-`B` vertex carries at most one pendant, so the maximum degree is at
/// most `n - |B|`.
pub fn rainbow_tree_with_leaves(
    g: &GraphView<'_>,
    a: &[Vertex],
    alpha: Ratio,
) -> std::result::Result<LeafTree, LeafTreeError> {
    let graph = g.graph();
    let nv = graph.vertex_count();
    let mut in_a = vec![false; nv];
    for &v in a {
        if !g.contains_vertex(v) {
            return Err(LeafTreeError {
                stage: LeafStage::LeafSet(v),
            });
        }
        in_a[v] = true;
    }
    let mut leaves: Vec<Vertex> = g.vertices().filter(|&v| in_a[v]).collect();
    let target = alpha.ceil_mul(g.vertex_count()).max(leaves.len());
    let mut in_b = in_a.clone();
    let padding: Vec<Vertex> = g
        .vertices()
        .filter(|&v| !in_a[v])
        .take(target - leaves.len())
        .collect();
    for &v in &padding {
        in_b[v] = true;
    }

    let mut taken_vertex = vec![false; nv];
    let mut taken_colour = vec![false; graph.colour_count()];
    let mut pendants = Vec::new();
    let mut pick = |v: Vertex, forbidden: &[bool], stage: LeafStage| {
        let e = graph
            .incident(v)
            .iter()
            .copied()
            .filter(|&e| g.contains_edge(e))
            .find(|&e| {
                let edge = graph.edge(e);
                let u = edge.other(v);
                !forbidden[u] && !taken_vertex[u] && !taken_colour[edge.colour]
            })
            .ok_or(LeafTreeError { stage })?;
        let edge = graph.edge(e);
        taken_vertex[edge.other(v)] = true;
        taken_colour[edge.colour] = true;
        pendants.push(e);
        Ok(())
    };
    for &v in &leaves {
        pick(v, &in_a, LeafStage::PendantLeaf(v))?;
    }
    for &v in &padding {
        pick(v, &in_b, LeafStage::PendantPadding(v))?;
    }

    leaves.extend(padding);
    leaves.sort_unstable();
    let b = leaves;
    let pendant_colours: ColourSet = pendants.iter().map(|&e| graph.edge(e).colour).collect();
    let core = g.drop_vertices(&b).without_colours(&pendant_colours);
    let core_tree = balanced_tree(&core).ok_or(LeafTreeError {
        stage: LeafStage::CoreTree,
    })?;

    let mut edges = core_tree.edges;
    edges.extend(&pendants);
    let tree = RainbowTree::from_edges(g, edges).expect("pendants attach B to the core tree");
    Ok(LeafTree { tree, b, pendants })
}

/// Bookkeeping for the iterative peel: the union of the trees found so far
/// and each vertex's degree in it.
#[derive(Debug, Clone)]
pub struct PeelState {
    in_forest: Vec<bool>,
    degree: Vec<usize>,
    trees: Vec<RainbowTree>,
}

impl PeelState {
    fn new(g: &ColouredGraph) -> Self {
        PeelState {
            in_forest: vec![false; g.edge_count()],
            degree: vec![0; g.vertex_count()],
            trees: Vec::new(),
        }
    }

    fn push(&mut self, g: &ColouredGraph, tree: RainbowTree) {
        for &e in &tree.edges {
            debug_assert!(!self.in_forest[e]);
            self.in_forest[e] = true;
            self.degree[g.edge(e).u] += 1;
            self.degree[g.edge(e).v] += 1;
        }
        self.trees.push(tree);
    }

    pub fn forest_union(&self) -> Vec<EdgeId> {
        (0..self.in_forest.len())
            .filter(|&e| self.in_forest[e])
            .collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.degree[v]
    }

    /// Vertices of `g` with forest-union degree at least `threshold`.
    pub fn high_degree_set(&self, g: &GraphView<'_>, threshold: usize) -> Vec<Vertex> {
        g.vertices()
            .filter(|&v| self.degree[v] >= threshold)
            .collect()
    }

    pub fn trees(&self) -> &[RainbowTree] {
        &self.trees
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelOutcome {
    pub trees: Vec<RainbowTree>,
    /// The high-degree leaf set used for each tree.
    pub leaf_sets: Vec<Vec<Vertex>>,
    /// Index and reason of the target that could not be served.
    pub failure: Option<(usize, LeafStage)>,
    pub diagnostics: Vec<String>,
}

/// Finds edge-disjoint rainbow trees `T_1, T_2, ...`, with `T_i` spanning
/// `targets[i]`, in order. Before each tree the edges of earlier trees are
/// removed from the target, and every vertex whose degree in the earlier
/// trees reached `alpha * high_deg_frac * n` is made a leaf. Trees are built
/// by [`rainbow_tree_with_leaves`] at `alpha * max_deg_frac`.
pub fn peel_trees(
    g: &GraphView<'_>,
    targets: &[GraphView<'_>],
    params: &PipelineParams,
    alpha: Ratio,
) -> PeelOutcome {
    let graph = g.graph();
    let n = g.vertex_count();
    let high_threshold = alpha.mul(params.high_deg_frac).ceil_mul(n).max(1);
    let leaf_alpha = alpha.mul(params.max_deg_frac);
    let min_degree = n - alpha.mul(params.degree_slack).floor_mul(n);
    let forest_degree_cap = n - alpha.div_int(15).floor_mul(n);

    let mut state = PeelState::new(graph);
    let mut leaf_sets = Vec::new();
    let mut diagnostics = Vec::new();
    let mut low_degree_targets = 0;
    let mut failure = None;
    for (i, target) in targets.iter().enumerate() {
        if target.min_degree() < min_degree && target.vertex_count() > 1 {
            low_degree_targets += 1;
        }
        let remaining = target.retain_edges(|e, _| !state.in_forest[e]);
        let leaves = state.high_degree_set(&remaining, high_threshold);
        match rainbow_tree_with_leaves(&remaining, &leaves, leaf_alpha) {
            Ok(found) => {
                state.push(graph, found.tree);
                leaf_sets.push(leaves);
            }
            Err(err) => {
                diagnostics.push(format!("tree {i}: {err}"));
                failure = Some((i, err.stage));
                break;
            }
        }
    }
    if low_degree_targets > 0 {
        diagnostics.push(format!(
            "{low_degree_targets} target(s) below the expected minimum degree {min_degree}"
        ));
    }
    if let Some(v) = (0..graph.vertex_count()).find(|&v| state.degree[v] > forest_degree_cap) {
        diagnostics.push(format!(
            "vertex {v} has degree {} in the peeled trees, above (1 - {alpha}/15) n = {forest_degree_cap}",
            state.degree[v]
        ));
    }
    PeelOutcome {
        trees: state.trees,
        leaf_sets,
        failure,
        diagnostics,
    }
}

/// Robust branch: `ell = beta^2 n / ell_divisor` leaf-constrained trees
/// peeled directly from `g`, richness measured at `beta`.
pub fn decompose_robust(g: &GraphView<'_>, params: &PipelineParams) -> DecompositionResult {
    let n = g.vertex_count();
    let mut result = DecompositionResult::new(params, Some(Branch::Robust));
    let computed = floor_square_ratio(params.beta, n, params.ell_divisor);
    let ell = params.ell.unwrap_or(computed.max(params.ell_floor(n)));
    result.stats.ell = Some(ell);
    if ell == 0 {
        result.stats.degenerate = true;
        result.note(format!(
            "tree target is 0: beta^2 n / {} = {}^2 * {n} / {} rounds down to zero",
            params.ell_divisor, params.beta, params.ell_divisor
        ));
        return result;
    }
    let targets = vec![g.clone(); ell];
    let outcome = timed(&mut result.stats.timings, "peel", || {
        peel_trees(g, &targets, params, params.beta)
    });
    result.stats.diagnostics.extend(outcome.diagnostics);
    result.trees = outcome.trees;
    result
}

/// Rich branch: reserve one rainbow matching of size `r = n - 1 - #rich`
/// per tree from the non-rich colours, then peel each tree `T_i` inside the
/// colours its matching `M_i` leaves unused, on the vertices the matching
/// does not claim. `M_i` joins each claimed vertex to `T_i`, so `M_i + T_i`
/// is a rainbow spanning tree.
pub fn decompose_rich(g: &GraphView<'_>, params: &PipelineParams) -> DecompositionResult {
    let n = g.vertex_count();
    let mut result = DecompositionResult::new(params, Some(Branch::Rich));
    let rich = rich_colours(g, params.alpha);
    let r = n.saturating_sub(1).saturating_sub(rich.len());
    let computed = floor_square_ratio(params.alpha, n, params.rich_ell_divisor);
    let ell = params.ell.unwrap_or(computed.max(params.ell_floor(n)));
    result.stats.ell = Some(ell);

    let expected_rich = n.saturating_sub(params.alpha.div_int(params.rich_gap).floor_mul(n));
    if rich.len() < expected_rich {
        result.note(format!(
            "{} rich colours, fewer than n - alpha n / {} = {expected_rich}",
            rich.len(),
            params.rich_gap
        ));
    }
    if ell == 0 {
        result.stats.degenerate = true;
        result.note(format!(
            "tree target is 0: alpha^2 n / {} = {}^2 * {n} / {} rounds down to zero",
            params.rich_ell_divisor, params.alpha, params.rich_ell_divisor
        ));
        return result;
    }

    let scarce = g.without_colours(&rich);
    let reservation = match timed(&mut result.stats.timings, "reserve", || {
        disjoint_rainbow_matchings(&scarce, r, ell, params.reservation)
    }) {
        Ok(res) => res,
        Err(err) => {
            result.note(err.to_string());
            return result;
        }
    };
    result
        .stats
        .diagnostics
        .extend(reservation.notes.iter().cloned());

    let reserved: Vec<EdgeId> = reservation
        .matchings
        .iter()
        .flat_map(|m| m.matching.edges.iter().copied())
        .collect();
    let host = g.without_edges(reserved);
    let targets: Vec<GraphView<'_>> = reservation
        .matchings
        .iter()
        .map(|m| host.with_colours(&m.unused_colours).induced(&m.x))
        .collect();
    let outcome = timed(&mut result.stats.timings, "peel", || {
        peel_trees(&host, &targets, params, params.alpha.div_int(2))
    });
    result.stats.diagnostics.extend(outcome.diagnostics);

    for (i, (tree, reserved)) in outcome
        .trees
        .into_iter()
        .zip(&reservation.matchings)
        .enumerate()
    {
        let tree_colours: ColourSet = tree.edges.iter().map(|&e| g.edge(e).colour).collect();
        if reserved
            .matching
            .edges
            .iter()
            .any(|&e| tree_colours.contains(&g.edge(e).colour))
        {
            result.note(format!("tree {i}: matching and peeled tree share a colour"));
            break;
        }
        let mut edges = tree.edges;
        edges.extend(&reserved.matching.edges);
        match RainbowTree::from_edges(g, edges) {
            Some(t) => result.trees.push(t),
            None => {
                result.note(format!("tree {i}: matching plus peeled tree does not span"));
                break;
            }
        }
    }
    result
}

/// Start forest for one peel step. Edges between vertices with many
/// remaining edges come first, and a first pass keeps every vertex at
/// degree two or less, so the tree tends towards a path and does not strip
/// any vertex bare.
fn balanced_start(g: &GraphView<'_>) -> Vec<EdgeId> {
    let graph = g.graph();
    let degree = g.degrees();
    let mut order = g.edge_ids().to_vec();
    order.sort_by_key(|&e| {
        let edge = graph.edge(e);
        let (a, b) = (degree[edge.u], degree[edge.v]);
        (std::cmp::Reverse(a.min(b)), std::cmp::Reverse(a.max(b)), e)
    });
    let mut uf = UnionFind::new(graph.vertex_count());
    let mut used = vec![false; graph.colour_count()];
    let mut tree_degree = vec![0usize; graph.vertex_count()];
    let mut out = Vec::new();
    for cap in [2, usize::MAX] {
        for &e in &order {
            let edge = graph.edge(e);
            if used[edge.colour] || tree_degree[edge.u] >= cap || tree_degree[edge.v] >= cap {
                continue;
            }
            if uf.union(edge.u, edge.v) {
                used[edge.colour] = true;
                tree_degree[edge.u] += 1;
                tree_degree[edge.v] += 1;
                out.push(e);
            }
        }
    }
    out
}

/// A rainbow spanning tree grown from [`balanced_start`], if one exists.
fn balanced_tree(g: &GraphView<'_>) -> Option<RainbowTree> {
    let forest = augment_to_maximum(g, balanced_start(g));
    if forest.len() + 1 < g.vertex_count() {
        return None;
    }
    RainbowTree::from_edges(g, forest.edges)
}

/// Repeatedly takes a rainbow spanning tree of the remaining graph and
/// deletes its edges, until none is left or `limit` trees are found.
pub fn greedy_peel(g: &GraphView<'_>, limit: usize) -> DecompositionResult {
    let params = PipelineParams {
        limit: Some(limit),
        ..PipelineParams::practical()
    };
    let mut result = DecompositionResult::new(&params, None);
    let mut remaining = g.clone();
    let start = Instant::now();
    while result.trees.len() < limit {
        let Some(tree) = balanced_tree(&remaining) else {
            break;
        };
        remaining = remaining.without_edges(tree.edges.iter().copied());
        result.trees.push(tree);
    }
    result.stats.timings.push(("peel".into(), start.elapsed()));
    result
}

/// Top-level driver. Rejects improper input, and incomplete input in paper
/// mode. The branch decision is always computed and reported; paper mode
/// follows it, practical mode extracts trees by [`greedy_peel`].
pub fn decompose(g: &ColouredGraph, params: &PipelineParams) -> Result<DecompositionResult> {
    params.validate()?;
    let report = crate::graph::validate_proper(g);
    if !report.is_proper {
        return Err(Error::Improper {
            violations: report.violations.len(),
        });
    }
    let n = g.vertex_count();
    let mut warnings = Vec::new();
    if !report.is_complete {
        if params.mode == Mode::Paper {
            return Err(Error::Incomplete {
                edges: g.edge_count(),
                expected: n * n.saturating_sub(1) / 2,
            });
        }
        warnings.push("input is not a complete graph".to_string());
    }

    let view = g.view();
    let mut timings = Vec::new();
    let decision: BranchDecision = timed(&mut timings, "classify", || {
        classify(&view, params.alpha, params.beta)
    });

    let mut result = match params.mode {
        Mode::Paper => match decision.branch {
            Branch::Robust => decompose_robust(&view, params),
            Branch::Rich => decompose_rich(&view, params),
        },
        Mode::Practical => {
            let limit = params.limit.unwrap_or(n / 2);
            let mut r = greedy_peel(&view, limit);
            r.params = params.clone();
            r.stats.seed = params.seed;
            r.stats.ell = Some(limit);
            r
        }
    };
    result.branch = Some(decision.branch);
    result.stats.fallback = decision.fallback;
    timings.append(&mut result.stats.timings);
    result.stats.timings = timings;
    let mut notes = warnings;
    notes.extend(decision.warnings);
    notes.append(&mut result.stats.diagnostics);
    result.stats.diagnostics = notes;

    if params.mode == Mode::Paper {
        let promised = n / params.theorem_divisor as usize;
        if result.trees.len() < promised || result.trees.is_empty() {
            result.stats.degenerate = true;
            result.note(format!(
                "{} tree(s) found; the guarantee n / {} = {promised} is vacuous or unmet at n = {n}",
                result.trees.len(),
                params.theorem_divisor
            ));
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_one_factorization, gen_rainbow, gen_random_proper};
    use crate::verify::verify_decomposition;

    fn relaxed() -> PipelineParams {
        PipelineParams {
            mode: Mode::Paper,
            alpha: Ratio::of(1, 2),
            max_deg_frac: Ratio::of(1, 1),
            high_deg_frac: Ratio::of(1, 1),
            ..PipelineParams::default()
        }
    }

    #[test]
    fn well_coloured_tree_examples() {
        let g = gen_one_factorization(4).unwrap();
        assert!(rainbow_tree_well_coloured(&g.view(), Ratio::of(1, 8))
            .0
            .is_some());
        let path = ColouredGraph::new(3, [(0, 1, 0), (1, 2, 0)]).unwrap();
        assert!(rainbow_tree_well_coloured(&path.view(), Ratio::of(1, 8))
            .0
            .is_none());
        let k2 = gen_rainbow(2);
        assert_eq!(
            rainbow_tree_well_coloured(&k2.view(), Ratio::of(1, 8))
                .0
                .unwrap()
                .edges,
            vec![0]
        );
    }

    fn check_leaf_tree(g: &GraphView<'_>, a: &[Vertex], t: &LeafTree) {
        let deg = t.tree.degrees(g);
        for &v in a {
            assert_eq!(deg[v], 1, "vertex {v} is not a leaf");
        }
        let max = g.vertices().map(|v| deg[v]).max().unwrap_or(0);
        assert!(max <= g.vertex_count() - t.b.len());
        assert!(
            verify_decomposition(g.graph(), std::slice::from_ref(&t.tree.edges))
                .unwrap()
                .is_valid()
        );
    }

    #[test]
    fn leaf_tree_examples() {
        let g = gen_random_proper(5, 3);
        let t = rainbow_tree_with_leaves(&g.view(), &[], Ratio::of(1, 5)).unwrap();
        assert_eq!(t.b, vec![0]);
        check_leaf_tree(&g.view(), &[], &t);
        assert_eq!(t.tree.degrees(&g.view())[0], 1);

        let g = gen_one_factorization(6).unwrap();
        let t = rainbow_tree_with_leaves(&g.view(), &[0], Ratio::of(1, 6)).unwrap();
        check_leaf_tree(&g.view(), &[0], &t);

        let all: Vec<_> = (0..6).collect();
        let err = rainbow_tree_with_leaves(&g.view(), &all, Ratio::of(1, 6)).unwrap_err();
        assert_eq!(err.stage, LeafStage::PendantLeaf(0));

        let err = rainbow_tree_with_leaves(&g.view(), &[9], Ratio::of(1, 6)).unwrap_err();
        assert_eq!(err.stage, LeafStage::LeafSet(9));
    }

    #[test]
    fn peel_examples() {
        let g = gen_one_factorization(6).unwrap();
        let params = relaxed();
        let out = peel_trees(&g.view(), &[], &params, params.alpha);
        assert!(out.trees.is_empty());

        let out = peel_trees(&g.view(), &[g.view()], &params, params.alpha);
        assert_eq!(out.trees.len(), 1);
        assert!(out.leaf_sets[0].is_empty());
    }

    #[test]
    fn peel_two_trees_on_k8() {
        let g = gen_one_factorization(8).unwrap();
        let params = PipelineParams {
            alpha: Ratio::of(1, 2),
            max_deg_frac: Ratio::of(1, 4),
            high_deg_frac: Ratio::of(3, 4),
            ..relaxed()
        };
        let targets = vec![g.view(), g.view()];
        let out = peel_trees(&g.view(), &targets, &params, params.alpha);
        assert_eq!(out.trees.len(), 2, "{:?}", out.diagnostics);
        let edges: Vec<_> = out.trees.iter().map(|t| t.edges.clone()).collect();
        assert!(verify_decomposition(&g, &edges).unwrap().is_valid());
        // Threshold ceil(3/8 * 8) = 3: the second tree's leaf set is every
        // vertex of degree >= 3 in the first tree, and all are leaves.
        let first = out.trees[0].degrees(&g.view());
        let expected: Vec<_> = (0..8).filter(|&v| first[v] >= 3).collect();
        assert!(!expected.is_empty());
        assert_eq!(out.leaf_sets[1], expected);
        let second = out.trees[1].degrees(&g.view());
        for &v in &out.leaf_sets[1] {
            assert_eq!(second[v], 1);
        }
    }

    #[test]
    fn robust_target_formula() {
        assert_eq!(floor_square_ratio(Ratio::of(1, 2), 10_000, 2500), 1);
        let g = gen_one_factorization(8).unwrap();
        let params = PipelineParams::paper();
        let r = decompose_robust(&g.view(), &params);
        assert!(r.trees.is_empty());
        assert!(r.stats.degenerate);
        assert_eq!(r.stats.ell, Some(0));
    }

    #[test]
    fn robust_practical_uses_greedy_target() {
        let g = gen_one_factorization(8).unwrap();
        let params = PipelineParams {
            beta: Ratio::of(1, 2),
            ..PipelineParams::practical()
        };
        let r = decompose_robust(&g.view(), &params);
        assert_eq!(r.stats.ell, Some(4));
        assert!(!r.trees.is_empty());
        assert!(verify_decomposition(&g, &r.tree_edges())
            .unwrap()
            .is_valid());
    }

    #[test]
    fn rich_branch_on_one_factorization() {
        let g = gen_one_factorization(12).unwrap();
        let params = PipelineParams {
            ell: Some(1),
            ..PipelineParams::paper()
        };
        let r = decompose_rich(&g.view(), &params);
        assert_eq!(r.trees.len(), 1, "{:?}", r.stats.diagnostics);
        assert!(verify_decomposition(&g, &r.tree_edges())
            .unwrap()
            .is_valid());
    }

    #[test]
    fn rich_target_formula() {
        assert_eq!(floor_square_ratio(Ratio::of(1, 2), 4_000_000, 1_000_000), 1);
    }

    #[test]
    fn rich_branch_with_reserved_matchings() {
        // Rainbow K_9 at alpha = 1/8: no rich colour, so r = 8 and the whole
        // tree comes from the reservation.
        let g = gen_rainbow(9);
        let params = PipelineParams {
            ell: Some(2),
            ..PipelineParams::practical()
        };
        let r = decompose_rich(&g.view(), &params);
        assert!(verify_decomposition(&g, &r.tree_edges())
            .unwrap()
            .is_valid());

        let g = gen_random_proper(16, 4);
        let params = PipelineParams {
            alpha: Ratio::of(1, 4),
            ell: Some(3),
            ..PipelineParams::practical()
        };
        let r = decompose_rich(&g.view(), &params);
        assert!(verify_decomposition(&g, &r.tree_edges())
            .unwrap()
            .is_valid());
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_peel(&gen_rainbow(2).view(), 1).trees.len(), 1);
        let g = gen_one_factorization(4).unwrap();
        assert_eq!(greedy_peel(&g.view(), 2).trees.len(), 1);
        let g = gen_one_factorization(6).unwrap();
        assert_eq!(greedy_peel(&g.view(), 3).trees.len(), 3);
        assert_eq!(greedy_peel(&g.view(), 2).trees.len(), 2);
        let mono = ColouredGraph::new(3, [(0, 1, 0), (0, 2, 0), (1, 2, 0)]).unwrap();
        assert!(greedy_peel(&mono.view(), 5).trees.is_empty());
    }

    #[test]
    fn driver_defaults_and_degeneracy() {
        let g = gen_one_factorization(10).unwrap();
        let r = decompose(&g, &PipelineParams::paper()).unwrap();
        assert_eq!(r.params.alpha, Ratio::of(1, 8));
        assert_eq!(r.params.beta, Ratio::of(1, 19200));
        assert_eq!(r.branch, Some(Branch::Rich));
        assert!(r.trees.is_empty());
        assert!(r.stats.degenerate);
        assert!(!r.stats.diagnostics.is_empty());

        let g = gen_one_factorization(6).unwrap();
        let r = decompose(&g, &PipelineParams::practical()).unwrap();
        assert!(r.trees.len() >= 2);
        assert!(verify_decomposition(&g, &r.tree_edges())
            .unwrap()
            .is_valid());
    }

    #[test]
    fn driver_rejects_bad_input() {
        let path = ColouredGraph::new(3, [(0, 1, 0), (1, 2, 0)]).unwrap();
        assert!(matches!(
            decompose(&path, &PipelineParams::practical()),
            Err(Error::Improper { .. })
        ));
        let p = ColouredGraph::new(3, [(0, 1, 0), (1, 2, 1)]).unwrap();
        assert!(matches!(
            decompose(&p, &PipelineParams::paper()),
            Err(Error::Incomplete { .. })
        ));
        let r = decompose(&p, &PipelineParams::practical()).unwrap();
        assert!(r
            .stats
            .diagnostics
            .iter()
            .any(|d| d.contains("not a complete graph")));
        let bad = PipelineParams {
            alpha: Ratio::of(0, 1),
            ..PipelineParams::practical()
        };
        assert!(decompose(&p, &bad).is_err());
    }
}
