//! Mass functions and the belief calculus over them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::frame::{cylinder_with, project_with, JointFrame, ValueSet};
use crate::rational::Rational;
use crate::set::FocalSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// All masses non-negative.
    Proper,
    /// Some mass negative, every commonality non-negative.
    Pseudo,
    /// Some commonality negative.
    Invalid,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Proper => "proper",
            Classification::Pseudo => "pseudo",
            Classification::Invalid => "invalid",
        }
    }
}

/// Basic probability assignment over a joint frame.
///
/// Masses sum to exactly one, the empty set never carries mass and zero
/// entries are not stored. Negative masses are allowed so that pseudo belief
/// functions can be represented; [`MassFunction::combine`] rejects them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassFunction {
    frame: Arc<JointFrame>,
    focals: BTreeMap<FocalSet, Rational>,
}

impl MassFunction {
    /// Builds a mass function. Repeated sets have their masses summed.
    pub fn new<I>(frame: Arc<JointFrame>, assignments: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FocalSet, Rational)>,
    {
        let mut focals: BTreeMap<FocalSet, Rational> = BTreeMap::new();
        for (set, mass) in assignments {
            frame.check_set(&set)?;
            if set.is_empty() {
                if mass.is_zero() {
                    continue;
                }
                return Err(Error::MassOnEmptySet);
            }
            *focals.entry(set).or_insert_with(Rational::zero) += mass;
        }
        focals.retain(|_, m| !m.is_zero());
        let total: Rational = focals.values().sum();
        if !total.is_one() {
            return Err(Error::MassSumNotOne(total));
        }
        Ok(Self { frame, focals })
    }

    pub(crate) fn from_parts(frame: Arc<JointFrame>, mut focals: BTreeMap<FocalSet, Rational>) -> Self {
        focals.retain(|_, m| !m.is_zero());
        debug_assert!(focals.values().sum::<Rational>().is_one());
        debug_assert!(focals.keys().all(|s| !s.is_empty()));
        Self { frame, focals }
    }

    /// Mass one on the whole frame.
    pub fn vacuous(frame: Arc<JointFrame>) -> Self {
        let full = frame.full_set();
        Self::categorical_unchecked(frame, full)
    }

    /// Mass one on `set`.
    pub fn categorical(frame: Arc<JointFrame>, set: FocalSet) -> Result<Self> {
        Self::new(frame, [(set, Rational::one())])
    }

    fn categorical_unchecked(frame: Arc<JointFrame>, set: FocalSet) -> Self {
        let mut focals = BTreeMap::new();
        focals.insert(set, Rational::one());
        Self { frame, focals }
    }

    pub fn frame(&self) -> &Arc<JointFrame> {
        &self.frame
    }

    /// Focal sets in canonical order with their masses.
    pub fn focals(&self) -> impl Iterator<Item = (&FocalSet, &Rational)> {
        self.focals.iter()
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = &FocalSet> {
        self.focals.keys()
    }

    pub fn num_focals(&self) -> usize {
        self.focals.len()
    }

    pub fn mass(&self, set: &FocalSet) -> Rational {
        self.focals.get(set).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.focals.values().all(|m| !m.is_negative())
    }

    pub fn is_vacuous(&self) -> bool {
        self.focals.len() == 1 && self.focals.keys().all(FocalSet::is_full)
    }

    /// All focals are singletons.
    pub fn is_probabilistic(&self) -> bool {
        self.focals.keys().all(|s| s.len() == 1)
    }

    /// All focals are cross products of per-variable sets.
    pub fn all_boxes(&self) -> bool {
        self.focals.keys().all(|s| self.frame.is_box(s))
    }

    /// Σ m(B) over nonempty B ⊆ A.
    pub fn belief(&self, set: &FocalSet) -> Result<Rational> {
        self.frame.check_set(set)?;
        Ok(self.focals.iter().filter(|(b, _)| b.is_subset(set)).map(|(_, m)| m).sum())
    }

    /// 1 − Bel(complement of A).
    pub fn plausibility(&self, set: &FocalSet) -> Result<Rational> {
        Ok(Rational::one() - self.belief(&set.complement())?)
    }

    /// Σ m(B) over B ⊇ A; Q(∅) = 1.
    pub fn commonality(&self, set: &FocalSet) -> Result<Rational> {
        self.frame.check_set(set)?;
        Ok(self.focals.iter().filter(|(b, _)| set.is_subset(b)).map(|(_, m)| m).sum())
    }

    pub fn classify(&self) -> Classification {
        if self.is_nonnegative() {
            return Classification::Proper;
        }
        // Q(A) = Q(C) where C is the intersection of all focals containing A,
        // so the intersection closure of the focal family covers every value.
        let generators: Vec<&FocalSet> = self.focals.keys().collect();
        let mut closure: BTreeSet<FocalSet> = generators.iter().map(|s| (*s).clone()).collect();
        let mut frontier: Vec<FocalSet> = closure.iter().cloned().collect();
        while let Some(set) = frontier.pop() {
            for g in &generators {
                let meet = set.intersection(g);
                if !meet.is_empty() && closure.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let all_nonnegative = closure.iter().all(|a| {
            let q: Rational = self.focals.iter().filter(|(b, _)| a.is_subset(b)).map(|(_, m)| m).sum();
            !q.is_negative()
        });
        if all_nonnegative {
            Classification::Pseudo
        } else {
            Classification::Invalid
        }
    }

    /// Marginal on the named variables (kept in frame order).
    pub fn marginalize<S: AsRef<str>>(&self, names: &[S]) -> Result<MassFunction> {
        let sub = Arc::new(self.frame.subframe(names)?);
        self.marginalize_to(&sub)
    }

    /// Marginal on an explicit subframe.
    pub fn marginalize_to(&self, sub: &Arc<JointFrame>) -> Result<MassFunction> {
        if **sub == *self.frame {
            return Ok(Self { frame: sub.clone(), focals: self.focals.clone() });
        }
        let map = self.frame.projection_map(sub)?;
        let mut focals: BTreeMap<FocalSet, Rational> = BTreeMap::new();
        for (set, m) in &self.focals {
            *focals.entry(project_with(&map, set, sub.size())).or_insert_with(Rational::zero) += m;
        }
        Ok(Self::from_parts(sub.clone(), focals))
    }

    /// Replaces every focal by its cylinder in `frame`, which must contain
    /// all variables of this function's frame.
    pub fn vacuous_extend(&self, frame: &Arc<JointFrame>) -> Result<MassFunction> {
        let map = frame.projection_map(&self.frame)?;
        let focals = self.focals.iter().map(|(s, m)| (cylinder_with(&map, s), m.clone())).collect();
        Ok(Self { frame: frame.clone(), focals })
    }

    /// Dempster's rule. Returns the normalized combination and the conflict
    /// `k`, the product mass that fell on the empty set.
    pub fn combine(&self, other: &MassFunction) -> Result<(MassFunction, Rational)> {
        if *self.frame != *other.frame {
            return Err(Error::FrameMismatch);
        }
        if !self.is_nonnegative() || !other.is_nonnegative() {
            return Err(Error::NotProper);
        }
        let mut conflict = Rational::zero();
        let mut joint: BTreeMap<FocalSet, Rational> = BTreeMap::new();
        for (a, ma) in &self.focals {
            for (b, mb) in &other.focals {
                let product = ma * mb;
                let meet = a.intersection(b);
                if meet.is_empty() {
                    conflict += product;
                } else {
                    *joint.entry(meet).or_insert_with(Rational::zero) += product;
                }
            }
        }
        let normalizer = Rational::one() - &conflict;
        if normalizer.is_zero() {
            return Err(Error::TotalConflict);
        }
        for m in joint.values_mut() {
            *m /= &normalizer;
        }
        Ok((Self::from_parts(self.frame.clone(), joint), conflict))
    }

    /// Shafer conditioning on `var ∈ values`.
    pub fn condition_shafer(&self, var: &str, values: ValueSet) -> Result<MassFunction> {
        let k = self.frame.require(var)?;
        if values.is_empty() {
            return Err(Error::EmptyComponent(var.into()));
        }
        if !values.is_subset(ValueSet::full(self.frame.variable(k).domain_size())) {
            return Err(Error::FrameMismatch);
        }
        self.condition_on(&self.frame.cylinder_of(k, values))
    }

    /// Shafer conditioning on an arbitrary nonempty event of this frame.
    pub fn condition_on(&self, event: &FocalSet) -> Result<MassFunction> {
        let evidence = Self::categorical(self.frame.clone(), event.clone())?;
        Ok(self.combine(&evidence)?.0)
    }

    /// Replaces each focal by the box of its per-variable projections.
    pub fn box_hull(&self) -> MassFunction {
        let mut focals: BTreeMap<FocalSet, Rational> = BTreeMap::new();
        for (set, m) in &self.focals {
            *focals.entry(self.frame.box_hull(set)).or_insert_with(Rational::zero) += m;
        }
        Self::from_parts(self.frame.clone(), focals)
    }
}
