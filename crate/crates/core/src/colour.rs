//! Colour-class richness, well-coloured certificates, robustness probes and
//! the rich/robust branch classifier.
//!
//! A class `U` of colours is `alpha`-rich in `G` when the subgraph of
//! `U`-coloured edges has a matching of at least `ceil(alpha |G|)` edges. A
//! graph is `alpha`-well-coloured when its colours split into `|G| - 1`
//! rich classes; a [`RichClassPartition`] is a certificate of that.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ColourSet, EdgeId, GraphView};
use crate::matching::{greedy_maximal_matching, max_matching};
use crate::ratio::Ratio;
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColourClass {
    pub colours: ColourSet,
    /// Matching number of the class subgraph.
    pub nu: usize,
    /// Edge count of the class subgraph.
    pub edges: usize,
}

impl ColourClass {
    fn measure(g: &GraphView<'_>, colours: ColourSet) -> Self {
        let sub = g.with_colours(&colours);
        ColourClass {
            nu: max_matching(&sub).len(),
            edges: sub.edge_count(),
            colours,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RichClassPartition {
    pub classes: Vec<ColourClass>,
    pub alpha: Ratio,
}

impl RichClassPartition {
    /// Recomputes every class from scratch and checks the certificate:
    /// disjoint classes covering the view's colours, each rich, and at least
    /// `|G| - 1` of them.
    pub fn check(&self, g: &GraphView<'_>) -> std::result::Result<(), String> {
        let n = g.vertex_count();
        let needed = self.alpha.ceil_mul(n);
        let mut seen = HashSet::new();
        for (i, class) in self.classes.iter().enumerate() {
            for &c in &class.colours {
                if !seen.insert(c) {
                    return Err(format!("colour {c} appears in two classes"));
                }
            }
            let sub = g.with_colours(&class.colours);
            let nu = max_matching(&sub).len();
            if nu != class.nu || sub.edge_count() != class.edges {
                return Err(format!("class {i}: cached values are stale"));
            }
            if nu < needed {
                return Err(format!("class {i}: nu = {nu} < {needed}"));
            }
        }
        if let Some(c) = g.colours().into_iter().find(|c| !seen.contains(c)) {
            return Err(format!("colour {c} is in no class"));
        }
        if self.classes.len() + 1 < n {
            return Err(format!("{} classes, {} needed", self.classes.len(), n - 1));
        }
        Ok(())
    }
}

fn check_ratio(alpha: Ratio) -> Result<()> {
    if alpha.is_unit_interval() {
        Ok(())
    } else {
        Err(Error::invalid(format!("ratio {alpha} must lie in (0, 1]")))
    }
}

/// `(flag, nu)` where `nu` is the exact matching number of the `u`-coloured
/// subgraph and `flag` is `nu >= ceil(alpha |G|)`.
pub fn is_rich(g: &GraphView<'_>, u: &ColourSet, alpha: Ratio) -> Result<(bool, usize)> {
    check_ratio(alpha)?;
    if let Some(&bad) = u.iter().find(|&&c| c >= g.graph().colour_count()) {
        return Err(Error::invalid(format!("unknown colour id {bad}")));
    }
    let nu = max_matching(&g.with_colours(u)).len();
    Ok((nu >= alpha.ceil_mul(g.vertex_count()), nu))
}

/// Colours that are individually `alpha`-rich. A colour class of a proper
/// colouring is a matching, so its edge count is its matching number.
pub fn rich_colours(g: &GraphView<'_>, alpha: Ratio) -> ColourSet {
    let needed = alpha.ceil_mul(g.vertex_count());
    g.colour_counts()
        .into_iter()
        .enumerate()
        .filter(|&(_, count)| count >= needed)
        .map(|(c, _)| c)
        .collect()
}

/// Whether the intended preconditions of [`find_rich_class`] hold: at least
/// `4 alpha n^2` edges and no individually rich colour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RichClassHypotheses {
    pub enough_edges: bool,
    pub no_rich_colour: bool,
}

pub fn rich_class_hypotheses(g: &GraphView<'_>, alpha: Ratio) -> RichClassHypotheses {
    let n = g.vertex_count();
    RichClassHypotheses {
        enough_edges: g.edge_count() >= alpha.mul_int(4).ceil_mul(n * n),
        no_rich_colour: rich_colours(g, alpha).is_empty(),
    }
}

/// Builds an `alpha`-rich class `U` with `|E(G_U)| <= 2 nu(G_U)` and
/// `nu(G_U) <= 2 alpha n`, or returns the partial class when it gets stuck.
///
/// `U` grows one colour at a time alongside a maximal matching `M` of
/// `G_U`. A colour `c` qualifies when it has `k >= 1` edges avoiding `V(M)`
/// and at most `k` edges meeting `V(M)`, and adding it keeps the matching
/// number within `2 alpha n`; colours are scanned in ascending id order and
/// the first qualifying one is taken. The edge bound follows because each
/// added colour brings at least as many new matching edges as other edges.
pub fn find_rich_class(
    g: &GraphView<'_>,
    alpha: Ratio,
) -> std::result::Result<ColourClass, ColourClass> {
    let n = g.vertex_count();
    let needed = alpha.ceil_mul(n);
    let cap = alpha.mul_int(2).floor_mul(n);
    let nv = g.graph().vertex_count();

    let mut by_colour: Vec<Vec<EdgeId>> = vec![Vec::new(); g.graph().colour_count()];
    for (id, e) in g.edges() {
        by_colour[e.colour].push(id);
    }

    let mut class = ColourSet::new();
    let mut matched = vec![false; nv];
    let mut nu = 0;
    loop {
        if nu >= needed && nu > 0 {
            return Ok(ColourClass::measure(g, class));
        }
        let mut chosen = None;
        for (c, edges) in by_colour.iter().enumerate() {
            if edges.is_empty() || class.contains(&c) {
                continue;
            }
            let inside: Vec<EdgeId> = edges
                .iter()
                .copied()
                .filter(|&e| !matched[g.edge(e).u] && !matched[g.edge(e).v])
                .collect();
            // In a proper colouring the inside edges are already disjoint;
            // counting a greedy matching keeps the bound honest otherwise.
            let k = greedy_maximal_matching(g, &inside).len();
            if k == 0 || edges.len() - k > k {
                continue;
            }
            let mut trial = class.clone();
            trial.insert(c);
            let trial_nu = max_matching(&g.with_colours(&trial)).len();
            if trial_nu <= cap {
                chosen = Some((c, trial, trial_nu));
                break;
            }
        }
        let Some((c, trial, trial_nu)) = chosen else {
            return Err(ColourClass::measure(g, class));
        };
        // Extend M inside G - V(M) with the new colour's edges.
        let extension = greedy_maximal_matching(
            &g.retain_edges(|_, e| !matched[e.u] && !matched[e.v]),
            &by_colour[c],
        );
        for &e in &extension.edges {
            matched[g.edge(e).u] = true;
            matched[g.edge(e).v] = true;
        }
        class = trial;
        nu = trial_nu;
    }
}

/// Failure of [`certify_well_coloured`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("found {achieved} rich classes, {needed} needed{}", detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default())]
pub struct WellColouredFailure {
    pub achieved: usize,
    pub needed: usize,
    pub detail: Option<String>,
}

/// Tries to certify that `g` is `alpha`-well-coloured.
///
/// Each colour of `forced_singletons` becomes its own class and must be rich
/// on its own. The remaining colours are grouped by repeated
/// [`find_rich_class`] on what is left; colours in no class are merged into
/// the last class, which can only raise its matching number.
pub fn certify_well_coloured(
    g: &GraphView<'_>,
    alpha: Ratio,
    forced_singletons: &ColourSet,
) -> std::result::Result<RichClassPartition, WellColouredFailure> {
    let n = g.vertex_count();
    let needed_classes = n.saturating_sub(1);
    let mut classes = Vec::new();
    for &c in forced_singletons {
        let single = ColourSet::from([c]);
        match is_rich(g, &single, alpha) {
            Ok((true, _)) => classes.push(ColourClass::measure(g, single)),
            _ => {
                return Err(WellColouredFailure {
                    achieved: classes.len(),
                    needed: needed_classes,
                    detail: Some(format!("forced colour {c} is not rich")),
                })
            }
        }
    }

    // Richness stays relative to |G|; the residual keeps every vertex.
    let mut residual = g.without_colours(forced_singletons);
    while classes.len() < needed_classes {
        let Ok(class) = find_rich_class(&residual, alpha) else {
            break;
        };
        residual = residual.without_colours(&class.colours);
        classes.push(class);
    }
    if classes.len() < needed_classes {
        return Err(WellColouredFailure {
            achieved: classes.len(),
            needed: needed_classes,
            detail: None,
        });
    }

    let leftover = residual.colours();
    if !leftover.is_empty() {
        match classes.last_mut() {
            Some(last) => {
                let mut merged = std::mem::take(&mut last.colours);
                merged.extend(leftover);
                *last = ColourClass::measure(g, merged);
            }
            None => {
                return Err(WellColouredFailure {
                    achieved: 0,
                    needed: needed_classes,
                    detail: Some("colours left over with no class to merge into".into()),
                })
            }
        }
    }
    Ok(RichClassPartition { classes, alpha })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessTrial {
    pub trial: usize,
    /// Edges removed across the `t` forests.
    pub removed: usize,
    pub passed: bool,
    pub achieved: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RobustnessReport {
    pub trials: Vec<RobustnessTrial>,
    /// No trial found a counterexample. Evidence, not proof.
    pub passed: bool,
}

/// Randomised falsification probe for `(alpha, t)`-robustness: each trial
/// removes `t` random maximal rainbow forests and tries to certify the rest
/// as `alpha`-well-coloured, forcing its individually rich colours to be
/// singleton classes.
pub fn check_robust(
    g: &GraphView<'_>,
    alpha: Ratio,
    t: usize,
    trials: usize,
    seed: u64,
) -> RobustnessReport {
    let trials: Vec<_> = (0..trials.max(1))
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            let mut residual = g.clone();
            let mut removed = 0;
            for _ in 0..t {
                let forest = random_rainbow_forest(&residual, &mut rng);
                removed += forest.len();
                residual = residual.without_edges(forest);
            }
            let forced = rich_colours(&residual, alpha);
            match certify_well_coloured(&residual, alpha, &forced) {
                Ok(p) => RobustnessTrial {
                    trial,
                    removed,
                    passed: true,
                    achieved: p.classes.len(),
                },
                Err(f) => RobustnessTrial {
                    trial,
                    removed,
                    passed: false,
                    achieved: f.achieved,
                },
            }
        })
        .collect();
    RobustnessReport {
        passed: trials.iter().all(|t| t.passed),
        trials,
    }
}

fn random_rainbow_forest(g: &GraphView<'_>, rng: &mut ChaCha8Rng) -> Vec<EdgeId> {
    let mut order = g.edge_ids().to_vec();
    order.shuffle(rng);
    let mut uf = UnionFind::new(g.graph().vertex_count());
    let mut used = vec![false; g.graph().colour_count()];
    let mut out = Vec::new();
    for e in order {
        let edge = g.edge(e);
        if !used[edge.colour] && uf.union(edge.u, edge.v) {
            used[edge.colour] = true;
            out.push(e);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Many individually rich colours.
    Rich,
    /// A well-coloured certificate survives forest removal.
    Robust,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Branch::Rich => "rich",
            Branch::Robust => "robust",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchDecision {
    pub branch: Branch,
    pub rich_colours: ColourSet,
    /// Present exactly when the branch is [`Branch::Robust`].
    pub certificate: Option<RichClassPartition>,
    pub alpha: Ratio,
    pub beta: Ratio,
    /// Neither branch could be established; `Rich` was chosen by default.
    pub fallback: bool,
    pub warnings: Vec<String>,
}

/// Decides between the rich-colour and robustly-coloured cases.
///
/// `Rich` when at least `n - ceil(16 beta n)` colours are `alpha`-rich.
/// Otherwise the rich colours' edges are set aside and `beta`-rich classes
/// with at most `alpha n` edges are peeled off one by one; if they, with
/// the rich colours as singletons, reach `n - 1` classes the answer is
/// `Robust` with that certificate. If neither happens the decision falls
/// back to `Rich` and says so.
pub fn classify(g: &GraphView<'_>, alpha: Ratio, beta: Ratio) -> BranchDecision {
    let n = g.vertex_count();
    let mut warnings = Vec::new();
    if !(alpha.is_positive() && alpha <= Ratio::of(1, 8)) {
        warnings.push(format!("alpha = {alpha} is outside (0, 1/8]"));
    }
    if beta > alpha.div_int(4) || !beta.is_positive() {
        warnings.push(format!("beta = {beta} is outside (0, alpha/4]"));
    }

    let rich = rich_colours(g, alpha);
    let threshold = n.saturating_sub(beta.mul_int(16).ceil_mul(n));
    if rich.len() >= threshold {
        return BranchDecision {
            branch: Branch::Rich,
            rich_colours: rich,
            certificate: None,
            alpha,
            beta,
            fallback: false,
            warnings,
        };
    }

    let needed_classes = n.saturating_sub(1);
    let edge_cap = alpha.floor_mul(n);
    let mut classes: Vec<ColourClass> = rich
        .iter()
        .map(|&c| ColourClass::measure(g, ColourSet::from([c])))
        .collect();
    let mut residual = g.without_colours(&rich);
    while classes.len() < needed_classes {
        match find_rich_class(&residual, beta) {
            Ok(class) if class.edges <= edge_cap => {
                residual = residual.without_colours(&class.colours);
                classes.push(class);
            }
            _ => break,
        }
    }

    if classes.len() >= needed_classes && !classes.is_empty() {
        let leftover = residual.colours();
        if !leftover.is_empty() {
            let last = classes.last_mut().unwrap();
            let mut merged = std::mem::take(&mut last.colours);
            merged.extend(leftover);
            *last = ColourClass::measure(g, merged);
        }
        let certificate = RichClassPartition {
            classes,
            alpha: beta,
        };
        return BranchDecision {
            branch: Branch::Robust,
            rich_colours: rich,
            certificate: Some(certificate),
            alpha,
            beta,
            fallback: false,
            warnings,
        };
    }

    warnings.push(format!(
        "neither branch established: {} rich colours (< {threshold}), {} of {needed_classes} classes",
        rich.len(),
        classes.len()
    ));
    BranchDecision {
        branch: Branch::Rich,
        rich_colours: rich,
        certificate: None,
        alpha,
        beta,
        fallback: true,
        warnings,
    }
}

/// The colours present in `g` that are not in `set`.
pub fn complement(g: &GraphView<'_>, set: &ColourSet) -> ColourSet {
    g.colours().difference(set).copied().collect()
}
