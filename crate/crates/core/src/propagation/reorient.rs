use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::conditional::{approximate_conditional, ApproxOptions, CoverRule, Strategy};
use crate::error::{Error, Result};
use crate::frame::JointFrame;
use crate::mass::MassFunction;
use crate::rational::Rational;

use super::network::{family_of, EvidentialPolytree};

/// A network whose backbone edges all point toward `target`.
///
/// Reversing an edge `a → b` whose head `b` has other parents hands those
/// parents to `a` as well; the extra arcs are the added edges. The undirected
/// backbone is unchanged and is what messages travel along.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetOrientedNetwork {
    frame: Arc<JointFrame>,
    target: usize,
    parents: Vec<Vec<usize>>,
    backbone: Vec<(usize, usize)>,
    added: Vec<(usize, usize)>,
    reversed: Vec<(usize, usize)>,
    valuations: Vec<MassFunction>,
    qualities: BTreeMap<usize, Rational>,
    warnings: Vec<String>,
}

impl TargetOrientedNetwork {
    pub fn frame(&self) -> &Arc<JointFrame> {
        &self.frame
    }

    pub fn target(&self) -> &str {
        self.name(self.target)
    }

    pub(crate) fn target_index(&self) -> usize {
        self.target
    }

    fn name(&self, k: usize) -> &str {
        self.frame.variable(k).name()
    }

    fn names(&self, edges: &[(usize, usize)]) -> Vec<(&str, &str)> {
        edges.iter().map(|&(a, b)| (self.name(a), self.name(b))).collect()
    }

    /// All arcs, backbone and added, as `(parent, child)`.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut all: Vec<(usize, usize)> = self.backbone.iter().chain(&self.added).copied().collect();
        all.sort_unstable();
        self.names(&all)
    }

    pub fn backbone_edges(&self) -> Vec<(&str, &str)> {
        self.names(&self.backbone)
    }

    pub fn added_edges(&self) -> Vec<(&str, &str)> {
        self.names(&self.added)
    }

    /// Original edges that were turned around, in their original direction.
    pub fn reversed_edges(&self) -> Vec<(&str, &str)> {
        self.names(&self.reversed)
    }

    pub fn parents(&self, node: &str) -> Option<Vec<&str>> {
        let k = self.frame.index_of(node)?;
        Some(self.parents[k].iter().map(|&p| self.name(p)).collect())
    }

    pub fn valuation(&self, node: &str) -> Option<&MassFunction> {
        self.frame.index_of(node).map(|k| &self.valuations[k])
    }

    pub(crate) fn valuations(&self) -> &[MassFunction] {
        &self.valuations
    }

    /// Quality of every recomputed conditional, by node name.
    pub fn qualities(&self) -> Vec<(&str, &Rational)> {
        self.qualities.iter().map(|(&k, q)| (self.name(k), q)).collect()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub(crate) fn backbone_adjacency(&self) -> Vec<Vec<usize>> {
        adjacency(self.frame.num_variables(), &self.backbone)
    }
}

pub(crate) fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Breadth-first distances from `target` and each node's neighbour toward it.
pub(crate) fn toward_target(adj: &[Vec<usize>], target: usize) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut next = vec![None; adj.len()];
    let mut queue = VecDeque::from([target]);
    dist[target] = 0;
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                next[u] = Some(v);
                queue.push_back(u);
            }
        }
    }
    (dist, next)
}

/// Node budget of the default exhaustive search.
pub const REORIENT_NODE_BUDGET: usize = 50_000;

/// Seed of the stochastic fallback used once the exhaustive budget runs out.
pub const FALLBACK_SEED: u64 = 0;

/// Default options for recomputing conditionals after a reversal:
/// exhaustive search with union covers, which keep forward conditioning
/// marginally correct.
pub fn default_reorient_options() -> ApproxOptions {
    let mut options = ApproxOptions::new(Strategy::Exhaustive).with_cover(CoverRule::Union);
    options.node_budget = REORIENT_NODE_BUDGET;
    options
}

/// Points every backbone edge toward `target`. Nodes whose parent set
/// changes get a new valuation: the marginal of the network's joint for new
/// roots, an approximate conditional of the box-hulled family marginal
/// otherwise. An exhaustive search that exceeds its node budget is replaced
/// by seeded stochastic restarts, with a warning.
pub fn reorient_for_target(
    net: &EvidentialPolytree,
    target: &str,
    options: &ApproxOptions,
) -> Result<TargetOrientedNetwork> {
    net.require_valid()?;
    let frame = net.frame().clone();
    let t = frame.require(target)?;
    let n = frame.num_variables();
    let adj = net.adjacency();
    let (dist, _) = toward_target(&adj, t);

    let mut backbone = Vec::new();
    let mut reversed = Vec::new();
    for &(a, b) in net.edge_indices() {
        if dist[a] > dist[b] {
            backbone.push((a, b));
        } else {
            backbone.push((b, a));
            reversed.push((a, b));
        }
    }
    backbone.sort_unstable();

    let mut new_parents: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(a, b) in &backbone {
        new_parents[b].insert(a);
    }
    for &(a, b) in &reversed {
        // `a → b` became `b → a`; `a` inherits the other parents of `b`.
        for p in net.parent_indices(b) {
            if p != a {
                new_parents[a].insert(p);
            }
        }
    }
    let mut added: Vec<(usize, usize)> = Vec::new();
    for (child, ps) in new_parents.iter().enumerate() {
        for &p in ps {
            if !backbone.contains(&(p, child)) {
                added.push((p, child));
            }
        }
    }
    added.sort_unstable();

    let parents: Vec<Vec<usize>> = new_parents.into_iter().map(|s| s.into_iter().collect()).collect();
    let changed: Vec<usize> = (0..n).filter(|&k| parents[k] != net.parent_indices(k)).collect();
    let joint = if changed.is_empty() { None } else { Some(net.joint()?) };

    let mut valuations = Vec::with_capacity(n);
    let mut qualities = BTreeMap::new();
    let mut warnings = Vec::new();
    for k in 0..n {
        let original = net.valuation_at(k).expect("validated network").clone();
        let Some(joint) = joint.as_ref().filter(|_| changed.contains(&k)) else {
            valuations.push(original);
            continue;
        };
        let fam: Vec<&str> = family_of(k, &parents[k]).into_iter().map(|v| frame.variable(v).name()).collect();
        let local = joint.marginalize(&fam)?;
        if parents[k].is_empty() {
            valuations.push(local);
            continue;
        }
        let hull = local.box_hull();
        if hull != local {
            let msg = format!("family of `{}` has non-box focals; using its box hull", frame.variable(k).name());
            log::warn!("{msg}");
            warnings.push(msg);
        }
        let given: Vec<&str> = parents[k].iter().map(|&p| frame.variable(p).name()).collect();
        let result = match approximate_conditional(&hull, &given, options) {
            Err(Error::SearchBudgetExceeded(budget)) => {
                let msg = format!(
                    "exhaustive search for `{}` stopped after {budget} selections; using stochastic restarts",
                    frame.variable(k).name()
                );
                log::warn!("{msg}");
                warnings.push(msg);
                let mut fallback = options.clone();
                fallback.strategy = Strategy::Stochastic;
                fallback.seed = Some(FALLBACK_SEED);
                fallback.cover = Some(options.cover.unwrap_or(CoverRule::Tightest));
                approximate_conditional(&hull, &given, &fallback)?
            }
            other => other?,
        };
        qualities.insert(k, result.quality);
        valuations.push(result.conditional);
    }

    Ok(TargetOrientedNetwork { frame, target: t, parents, backbone, added, reversed, valuations, qualities, warnings })
}

impl EvidentialPolytree {
    /// The network read as target-oriented toward `target` without changing
    /// anything. Used for the as-given baseline.
    pub(crate) fn as_given(&self, target: usize) -> TargetOrientedNetwork {
        let n = self.frame().num_variables();
        let mut backbone: Vec<(usize, usize)> = self.edge_indices().to_vec();
        backbone.sort_unstable();
        TargetOrientedNetwork {
            frame: self.frame().clone(),
            target,
            parents: (0..n).map(|k| self.parent_indices(k)).collect(),
            backbone,
            added: Vec::new(),
            reversed: Vec::new(),
            valuations: (0..n).map(|k| self.valuation_at(k).expect("validated network").clone()).collect(),
            qualities: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }
}

impl TargetOrientedNetwork {
    pub(crate) fn family(&self, k: usize) -> Vec<usize> {
        family_of(k, &self.parents[k])
    }
}
