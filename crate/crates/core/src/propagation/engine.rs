use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::conditional::ApproxOptions;
use crate::error::{Error, Result};
use crate::frame::{JointFrame, ValueSet};
use crate::mass::MassFunction;
use crate::rational::Rational;
use crate::set::FocalSet;

use super::evidence::{compose_evidence, EvidenceSet};
use super::network::EvidentialPolytree;
use super::reorient::{reorient_for_target, toward_target, TargetOrientedNetwork};

/// Leaf-to-target message passing. Returns the target marginal.
pub fn propagate(oriented: &TargetOrientedNetwork, evidence: &EvidenceSet) -> Result<MassFunction> {
    let observed = evidence.resolve(oriented.frame())?;
    collect(oriented, &observed, None)
}

/// As [`propagate`], processing non-target nodes in the given order. The
/// order must send each node's message only after all messages into it.
pub fn propagate_with_schedule<S: AsRef<str>>(
    oriented: &TargetOrientedNetwork,
    evidence: &EvidenceSet,
    schedule: &[S],
) -> Result<MassFunction> {
    let observed = evidence.resolve(oriented.frame())?;
    let order = schedule.iter().map(|s| oriented.frame().require(s.as_ref())).collect::<Result<Vec<usize>>>()?;
    collect(oriented, &observed, Some(&order))
}

fn collect(
    net: &TargetOrientedNetwork,
    observed: &[(usize, ValueSet)],
    schedule: Option<&[usize]>,
) -> Result<MassFunction> {
    let frame = net.frame();
    let n = frame.num_variables();
    let target = net.target_index();
    let adj = net.backbone_adjacency();
    let (dist, next) = toward_target(&adj, target);

    let order: Vec<usize> = match schedule {
        Some(order) => {
            check_schedule(order, &next, target)?;
            order.to_vec()
        }
        None => {
            let mut order: Vec<usize> = (0..n).filter(|&k| k != target).collect();
            order.sort_by(|a, b| dist[*b].cmp(&dist[*a]).then(a.cmp(b)));
            order
        }
    };

    let families: Vec<Arc<JointFrame>> = (0..n)
        .map(|k| {
            let vars = net.family(k).into_iter().map(|v| frame.variable(v).clone()).collect();
            JointFrame::new(vars).map(Arc::new)
        })
        .collect::<Result<_>>()?;
    let mut inbox: Vec<Vec<MassFunction>> = vec![Vec::new(); n];

    let absorb = |k: usize, inbox: &mut Vec<Vec<MassFunction>>| -> Result<MassFunction> {
        let fam = &families[k];
        let mut local = net.valuations()[k].clone();
        let conflict = |e: Error| match e {
            Error::TotalConflict => Error::ConflictAtNode(frame.variable(k).name().into()),
            other => other,
        };
        if let Some((_, set)) = observed.iter().find(|(v, _)| *v == k) {
            let pos = fam.require(frame.variable(k).name())?;
            let factor = MassFunction::categorical(fam.clone(), fam.cylinder_of(pos, *set))?;
            local = local.combine(&factor).map_err(conflict)?.0;
        }
        for message in core::mem::take(&mut inbox[k]) {
            local = local.combine(&message.vacuous_extend(fam)?).map_err(conflict)?.0;
        }
        Ok(local)
    };

    for &k in &order {
        let local = absorb(k, &mut inbox)?;
        let to = next[k].ok_or_else(|| Error::InvalidNetwork("backbone is disconnected".into()))?;
        let shared: Vec<&str> = families[k].names().filter(|v| families[to].index_of(v).is_some()).collect();
        inbox[to].push(local.marginalize(&shared)?);
    }
    let local = absorb(target, &mut inbox)?;
    local.marginalize(&[frame.variable(target).name()])
}

fn check_schedule(order: &[usize], next: &[Option<usize>], target: usize) -> Result<()> {
    let n = next.len();
    let mut position = vec![usize::MAX; n];
    for (i, &k) in order.iter().enumerate() {
        if k == target || position[k] != usize::MAX {
            return Err(Error::InvalidSchedule);
        }
        position[k] = i;
    }
    for k in 0..n {
        if k == target {
            continue;
        }
        if position[k] == usize::MAX {
            return Err(Error::InvalidSchedule);
        }
        if let Some(to) = next[k] {
            if to != target && position[to] < position[k] {
                return Err(Error::InvalidSchedule);
            }
        }
    }
    Ok(())
}

/// Target marginal of the full joint of `net` combined with the evidence.
pub fn oracle_marginal(net: &EvidentialPolytree, evidence: &EvidenceSet, target: &str) -> Result<MassFunction> {
    conditioned_marginal(&net.joint()?, evidence, target)
}

fn conditioned_marginal(joint: &MassFunction, evidence: &EvidenceSet, target: &str) -> Result<MassFunction> {
    joint.frame().require(target)?;
    let ev = compose_evidence(evidence, joint.frame())?;
    joint.combine(&ev)?.0.marginalize(&[target])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Same mass function.
    Equal,
    /// `Bel ≤ Bel_ref` everywhere, strictly on `witness`.
    StrictlyCorrect { witness: FocalSet },
    /// `Bel(witness) > Bel_ref(witness)`.
    Violation { witness: FocalSet, belief: Rational, reference: Rational },
}

impl Outcome {
    pub fn as_str(&self) -> &'static str {
        match self {
            Outcome::Equal => "equal",
            Outcome::StrictlyCorrect { .. } => "marginally-correct",
            Outcome::Violation { .. } => "violation",
        }
    }

    pub fn is_correct(&self) -> bool {
        !matches!(self, Outcome::Violation { .. })
    }
}

/// Compares two mass functions on a single-variable frame subset by subset.
pub fn compare_beliefs(result: &MassFunction, reference: &MassFunction) -> Result<Outcome> {
    if result.frame() != reference.frame() {
        return Err(Error::FrameMismatch);
    }
    if result == reference {
        return Ok(Outcome::Equal);
    }
    let size = result.frame().size();
    if size > crate::lattice::DENSE_LIMIT {
        return Err(Error::FrameTooLarge { size, max: crate::lattice::DENSE_LIMIT });
    }
    let mut strict = None;
    for mask in 1u64..1 << size {
        let a = FocalSet::from_mask(size, mask);
        let (b, r) = (result.belief(&a)?, reference.belief(&a)?);
        if b > r {
            return Ok(Outcome::Violation { witness: a, belief: b, reference: r });
        }
        if b < r && strict.is_none() {
            strict = Some(a);
        }
    }
    Ok(Outcome::StrictlyCorrect { witness: strict.expect("distinct functions differ in belief somewhere") })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub oriented: TargetOrientedNetwork,
    /// Propagated through the target-oriented network.
    pub propagated: MassFunction,
    /// Propagated through the network as given, toward the same target.
    pub baseline: MassFunction,
    /// The network's own joint, or the supplied reference, conditioned.
    pub oracle: MassFunction,
    pub outcome: Outcome,
    pub baseline_outcome: Outcome,
}

/// Runs both routes and compares them with the oracle. With `reference`,
/// the oracle conditions that joint (for instance the data the network was
/// learned from) instead of the network's own joint.
pub fn verify(
    net: &EvidentialPolytree,
    evidence: &EvidenceSet,
    target: &str,
    options: &ApproxOptions,
    reference: Option<&MassFunction>,
) -> Result<VerifyReport> {
    let oriented = reorient_for_target(net, target, options)?;
    let propagated = propagate(&oriented, evidence)?;
    let baseline = collect(&net.as_given(oriented.target_index()), &evidence.resolve(net.frame())?, None)?;
    let oracle = match reference {
        Some(joint) => {
            if joint.frame() != net.frame() {
                return Err(Error::FrameMismatch);
            }
            conditioned_marginal(joint, evidence, target)?
        }
        None => oracle_marginal(net, evidence, target)?,
    };
    let outcome = compare_beliefs(&propagated, &oracle)?;
    let baseline_outcome = compare_beliefs(&baseline, &oracle)?;
    Ok(VerifyReport { oriented, propagated, baseline, oracle, outcome, baseline_outcome })
}
