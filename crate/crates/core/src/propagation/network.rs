use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::conditional::is_cano_type;
use crate::error::{Error, Result};
use crate::frame::JointFrame;
use crate::mass::MassFunction;

/// Directed network over the variables of a frame, one valuation per node.
///
/// A node's valuation lives on its family: the node and its parents, in
/// frame order. Roots carry a plain marginal; other nodes carry a Cano-type
/// conditional given their parents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvidentialPolytree {
    frame: Arc<JointFrame>,
    edges: Vec<(usize, usize)>,
    valuations: Vec<Option<MassFunction>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SelfLoop(String),
    DuplicateEdge(String, String),
    DirectedCycle,
    /// The edge closes a second undirected path between its endpoints.
    MultiplePaths(String, String),
    Disconnected(String),
    MissingValuation(String),
    ScopeMismatch {
        node: String,
        expected: Vec<String>,
        found: Vec<String>,
    },
    ImproperValuation(String),
    NonCanoValuation(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop(n) => write!(f, "self loop on `{n}`"),
            Violation::DuplicateEdge(a, b) => write!(f, "edge `{a}` -> `{b}` listed twice"),
            Violation::DirectedCycle => write!(f, "directed cycle"),
            Violation::MultiplePaths(a, b) => write!(f, "edge `{a}` -> `{b}` closes an undirected cycle"),
            Violation::Disconnected(n) => write!(f, "`{n}` is not connected to the rest of the network"),
            Violation::MissingValuation(n) => write!(f, "no valuation for `{n}`"),
            Violation::ScopeMismatch { node, expected, found } => {
                write!(f, "valuation of `{node}` is over [{}], expected [{}]", found.join(", "), expected.join(", "))
            }
            Violation::ImproperValuation(n) => write!(f, "valuation of `{n}` has negative masses"),
            Violation::NonCanoValuation(n) => {
                write!(f, "valuation of `{n}` does not project onto the whole parent frame")
            }
        }
    }
}

impl Violation {
    pub fn kind(&self) -> &'static str {
        match self {
            Violation::SelfLoop(_) => "self-loop",
            Violation::DuplicateEdge(..) => "duplicate-edge",
            Violation::DirectedCycle => "cycle",
            Violation::MultiplePaths(..) => "multiple-paths",
            Violation::Disconnected(_) => "disconnected",
            Violation::MissingValuation(_) => "missing-valuation",
            Violation::ScopeMismatch { .. } => "scope-mismatch",
            Violation::ImproperValuation(_) => "improper-valuation",
            Violation::NonCanoValuation(_) => "non-cano-valuation",
        }
    }
}

impl EvidentialPolytree {
    /// Resolves names against `frame`. Structural problems are left for
    /// [`EvidentialPolytree::validate`]; only unknown names and repeated
    /// valuations are errors here.
    pub fn new<S: AsRef<str>>(
        frame: Arc<JointFrame>,
        edges: &[(S, S)],
        valuations: Vec<(S, MassFunction)>,
    ) -> Result<Self> {
        let mut resolved = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            resolved.push((frame.require(a.as_ref())?, frame.require(b.as_ref())?));
        }
        let mut slots = vec![None; frame.num_variables()];
        for (name, m) in valuations {
            let k = frame.require(name.as_ref())?;
            if slots[k].replace(m).is_some() {
                return Err(Error::InvalidNetwork(format!("two valuations for `{}`", name.as_ref())));
            }
        }
        Ok(Self { frame, edges: resolved, valuations: slots })
    }

    pub fn frame(&self) -> &Arc<JointFrame> {
        &self.frame
    }

    pub fn name(&self, node: usize) -> &str {
        self.frame.variable(node).name()
    }

    /// Edges as `(parent, child)` names.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        self.edges.iter().map(|&(a, b)| (self.name(a), self.name(b))).collect()
    }

    pub(crate) fn edge_indices(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn valuation(&self, node: &str) -> Option<&MassFunction> {
        self.frame.index_of(node).and_then(|k| self.valuations[k].as_ref())
    }

    pub(crate) fn valuation_at(&self, node: usize) -> Option<&MassFunction> {
        self.valuations[node].as_ref()
    }

    pub(crate) fn parent_indices(&self, node: usize) -> Vec<usize> {
        let set: BTreeSet<usize> = self.edges.iter().filter(|e| e.1 == node && e.0 != node).map(|e| e.0).collect();
        set.into_iter().collect()
    }

    pub fn parents(&self, node: &str) -> Result<Vec<&str>> {
        let k = self.frame.require(node)?;
        Ok(self.parent_indices(k).into_iter().map(|p| self.name(p)).collect())
    }

    /// The node and its parents, in frame order.
    pub fn family(&self, node: &str) -> Result<Vec<&str>> {
        let k = self.frame.require(node)?;
        Ok(family_of(k, &self.parent_indices(k)).into_iter().map(|p| self.name(p)).collect())
    }

    /// Undirected neighbour lists.
    pub(crate) fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.frame.num_variables()];
        for &(a, b) in &self.edges {
            if a != b && !adj[a].contains(&b) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
        }
        adj
    }

    /// Every problem found; an empty list means the network is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.frame.num_variables();
        let mut out = Vec::new();
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for &(a, b) in &self.edges {
            if a == b {
                out.push(Violation::SelfLoop(self.name(a).to_string()));
                continue;
            }
            if !seen.insert((a, b)) {
                out.push(Violation::DuplicateEdge(self.name(a).to_string(), self.name(b).to_string()));
                continue;
            }
            let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
            if ra == rb {
                out.push(Violation::MultiplePaths(self.name(a).to_string(), self.name(b).to_string()));
            } else {
                uf[ra] = rb;
            }
        }
        if has_directed_cycle(n, &self.edges) {
            out.push(Violation::DirectedCycle);
        }
        let root = find(&mut uf, 0);
        for k in 1..n {
            if find(&mut uf, k) != root {
                out.push(Violation::Disconnected(self.name(k).to_string()));
            }
        }
        for k in 0..n {
            let name = self.name(k).to_string();
            let Some(m) = &self.valuations[k] else {
                out.push(Violation::MissingValuation(name));
                continue;
            };
            let parents = self.parent_indices(k);
            let expected: Vec<String> = family_of(k, &parents).iter().map(|&v| self.name(v).to_string()).collect();
            let found: Vec<String> = m.frame().names().map(ToString::to_string).collect();
            let same_domains = self.frame.contains_frame(m.frame());
            if expected != found || !same_domains {
                out.push(Violation::ScopeMismatch { node: name, expected, found });
                continue;
            }
            if !m.is_nonnegative() {
                out.push(Violation::ImproperValuation(name));
                continue;
            }
            if !parents.is_empty() {
                let names: Vec<&str> = parents.iter().map(|&p| self.name(p)).collect();
                if !is_cano_type(m, &names).unwrap_or(false) {
                    out.push(Violation::NonCanoValuation(name));
                }
            }
        }
        out
    }

    /// `⊕` of all valuations, each extended to the full frame.
    pub fn joint(&self) -> Result<MassFunction> {
        let mut joint = MassFunction::vacuous(self.frame.clone());
        for (k, m) in self.valuations.iter().enumerate() {
            let m = m.as_ref().ok_or_else(|| Error::InvalidNetwork(format!("no valuation for `{}`", self.name(k))))?;
            joint = joint.combine(&m.vacuous_extend(&self.frame)?)?.0;
        }
        Ok(joint)
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidNetwork(v.to_string())),
        }
    }
}

pub(crate) fn family_of(node: usize, parents: &[usize]) -> Vec<usize> {
    let mut f: Vec<usize> = parents.to_vec();
    f.push(node);
    f.sort_unstable();
    f.dedup();
    f
}

fn has_directed_cycle(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut indegree = vec![0usize; n];
    for &(_, b) in edges {
        indegree[b] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&k| indegree[k] == 0).collect();
    let mut removed = 0;
    while let Some(k) = stack.pop() {
        removed += 1;
        for &(a, b) in edges {
            if a == k {
                indegree[b] -= 1;
                if indegree[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    removed < n
}
