use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frame::JointFrame;
use crate::mass::MassFunction;
use crate::set::FocalSet;

use super::Split;

/// `m↓X = (m↓p ⊕ cond)↓X` for every single variable `X`.
pub fn is_marginally_consistent<S: AsRef<str>>(m: &MassFunction, given: &[S], cond: &MassFunction) -> Result<bool> {
    if m.frame() != cond.frame() {
        return Err(Error::FrameMismatch);
    }
    let split = Split::new(m.frame(), given)?;
    let prior = m.marginalize_to(split.given())?.vacuous_extend(m.frame())?;
    let (joint, _) = prior.combine(cond)?;
    for name in m.frame().names() {
        let sub = Arc::new(m.frame().subframe(&[name])?);
        if m.marginalize_to(&sub)? != joint.marginalize_to(&sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every focal of `cond` projects onto the whole of `Ξ_p`.
pub fn is_cano_type<S: AsRef<str>>(cond: &MassFunction, given: &[S]) -> Result<bool> {
    let split = Split::new(cond.frame(), given)?;
    Ok(cond.focal_sets().all(|s| split.project_given(s).is_full()))
}

/// `Bel_approx↓X(A) ≤ Bel_ref↓X(A)` for every variable `X` and `A ⊆ Ξ_X`.
pub fn marginally_correct(reference: &MassFunction, approx: &MassFunction) -> Result<bool> {
    if reference.frame() != approx.frame() {
        return Err(Error::FrameMismatch);
    }
    for name in reference.frame().names() {
        let sub = Arc::new(reference.frame().subframe(&[name])?);
        if !dominated(&reference.marginalize_to(&sub)?, &approx.marginalize_to(&sub)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Bel_approx(A) ≤ Bel_ref(A)` for every `A` of the joint frame.
pub fn marginally_correct_joint(reference: &MassFunction, approx: &MassFunction) -> Result<bool> {
    if reference.frame() != approx.frame() {
        return Err(Error::FrameMismatch);
    }
    dominated(reference, approx)
}

/// Checks `Bel_approx ≤ Bel_ref` everywhere. `Bel_approx(A)` only depends on
/// which approx focals fit inside `A` and `Bel_ref` is monotone, so the
/// unions of approx focals are the only sets worth testing.
fn dominated(reference: &MassFunction, approx: &MassFunction) -> Result<bool> {
    let mut closure: BTreeSet<FocalSet> = BTreeSet::new();
    for focal in approx.focal_sets() {
        let grown: Vec<FocalSet> = closure.iter().map(|s| s.union(focal)).collect();
        closure.insert(focal.clone());
        closure.extend(grown);
    }
    for set in &closure {
        if approx.belief(set)? > reference.belief(set)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For every nonempty event `R ⊆ Ξ_r` that does not contradict `m`, the
/// conditioned `p ∪ q` marginal equals the combination of its own `p` and
/// `q` marginals.
pub fn conditional_independence<S: AsRef<str>>(m: &MassFunction, p: &[S], q: &[S], r: &[S]) -> Result<bool> {
    let frame = m.frame();
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for group in [p, q, r] {
        if group.is_empty() {
            return Err(Error::EmptyVariableSubset);
        }
        for name in group {
            frame.require(name.as_ref())?;
            if !seen.insert(name.as_ref()) {
                return Err(Error::OverlappingSubsets(name.as_ref().into()));
            }
        }
    }
    let pq_names: Vec<&str> = p.iter().chain(q).map(AsRef::as_ref).collect();
    let pq = Arc::new(frame.subframe(&pq_names)?);
    let p_frame = Arc::new(frame.subframe(p)?);
    let q_frame = Arc::new(frame.subframe(q)?);
    let r_frame: JointFrame = frame.subframe(r)?;
    if r_frame.size() > 16 {
        return Err(Error::FrameTooLarge { size: r_frame.size(), max: 16 });
    }
    for bits in 1u64..1 << r_frame.size() {
        let event = frame.cylinder(&FocalSet::from_mask(r_frame.size(), bits), &r_frame)?;
        let conditioned = match m.condition_on(&event) {
            Ok(c) => c,
            Err(Error::TotalConflict) => continue,
            Err(e) => return Err(e),
        };
        let joint = conditioned.marginalize_to(&pq)?;
        let left = joint.marginalize_to(&p_frame)?.vacuous_extend(&pq)?;
        let right = joint.marginalize_to(&q_frame)?.vacuous_extend(&pq)?;
        if left.combine(&right)?.0 != joint {
            return Ok(false);
        }
    }
    Ok(true)
}
