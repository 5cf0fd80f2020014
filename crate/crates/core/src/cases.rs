//! Set-valued case tables and the belief functions they induce.
//!
//! A record assigns a nonempty value set to every variable; its focal set is
//! the cross product of those sets. Conditioning selects the records that
//! meet the event and then narrows the conditioned cell to the intersection,
//! which is what makes case-based conditioning agree with Dempster's rule.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::frame::{JointFrame, ValueSet};
use crate::mass::MassFunction;
use crate::rational::Rational;
use crate::set::FocalSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseRecord {
    pub id: Option<String>,
    /// One value set per frame variable, in frame order.
    pub values: Vec<ValueSet>,
    pub count: u64,
}

impl CaseRecord {
    pub fn new(values: Vec<ValueSet>, count: u64) -> Self {
        Self { id: None, values, count }
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    fn is_singleton(&self) -> bool {
        self.values.iter().all(|v| v.len() == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTable {
    frame: Arc<JointFrame>,
    records: Vec<CaseRecord>,
}

impl CaseTable {
    /// Validates the records and merges those with equal value assignments,
    /// summing counts and keeping the first id.
    pub fn new(frame: Arc<JointFrame>, records: Vec<CaseRecord>) -> Result<Self> {
        let mut merged: Vec<CaseRecord> = Vec::with_capacity(records.len());
        for record in records {
            if record.values.len() != frame.num_variables() {
                return Err(Error::FrameMismatch);
            }
            if record.count == 0 {
                return Err(Error::NonPositiveCount);
            }
            for (v, set) in frame.variables().iter().zip(&record.values) {
                if set.is_empty() {
                    return Err(Error::EmptyComponent(v.name().into()));
                }
                if !set.is_subset(ValueSet::full(v.domain_size())) {
                    return Err(Error::FrameMismatch);
                }
            }
            match merged.iter_mut().find(|r| r.values == record.values) {
                Some(existing) => existing.count += record.count,
                None => merged.push(record),
            }
        }
        Ok(Self { frame, records: merged })
    }

    pub fn frame(&self) -> &Arc<JointFrame> {
        &self.frame
    }

    pub fn records(&self) -> &[CaseRecord] {
        &self.records
    }

    pub fn total(&self) -> u64 {
        self.records.iter().map(|r| r.count).sum()
    }

    /// Each record contributes `count / total` to the box of its cells.
    pub fn bpa(&self) -> Result<MassFunction> {
        let total = self.total();
        if total == 0 {
            return Err(Error::EmptyCaseTable);
        }
        let denom = BigInt::from(total);
        let mut assignments = Vec::with_capacity(self.records.len());
        for r in &self.records {
            let set = self.frame.box_set(&r.values)?;
            assignments.push((set, Rational::new(BigInt::from(r.count), denom.clone())));
        }
        MassFunction::new(self.frame.clone(), assignments)
    }

    /// Empirical joint distribution; every cell must be a single value.
    pub fn probability(&self) -> Result<MassFunction> {
        if !self.records.iter().all(CaseRecord::is_singleton) {
            return Err(Error::SetValuedCell);
        }
        self.bpa()
    }

    /// Drops records whose `var` cell misses `values` and narrows the rest.
    pub fn update(&self, var: &str, values: ValueSet) -> Result<CaseTable> {
        let k = self.checked_event(var, values)?;
        let records: Vec<CaseRecord> = self
            .records
            .iter()
            .filter_map(|r| {
                let narrowed = r.values[k].intersection(values);
                (!narrowed.is_empty()).then(|| {
                    let mut r = r.clone();
                    r.values[k] = narrowed;
                    r
                })
            })
            .collect();
        if records.is_empty() {
            return Err(Error::NoCaseSurvives);
        }
        CaseTable::new(self.frame.clone(), records)
    }

    /// Case-based a-posteriori bpa given `var ∈ values`.
    pub fn condition(&self, var: &str, values: ValueSet) -> Result<MassFunction> {
        self.update(var, values)?.bpa()
    }

    /// Applies the updates one after another, then computes the bpa.
    pub fn serial_condition<S: AsRef<str>>(&self, conditions: &[(S, ValueSet)]) -> Result<MassFunction> {
        let mut table = self.clone();
        for (var, values) in conditions {
            table = table.update(var.as_ref(), *values)?;
        }
        table.bpa()
    }

    /// The select-and-intersect shortcut that does not narrow cells: each
    /// condition selects the records whose cell meets the event, selections
    /// are intersected by record identity, and the surviving records are
    /// counted unchanged. Kept as a foil for [`CaseTable::serial_condition`].
    pub fn naive_serial_condition<S: AsRef<str>>(&self, conditions: &[(S, ValueSet)]) -> Result<MassFunction> {
        let mut survivors: BTreeSet<usize> = (0..self.records.len()).collect();
        for (var, values) in conditions {
            let k = self.checked_event(var.as_ref(), *values)?;
            let selected: BTreeSet<usize> = self
                .records
                .iter()
                .enumerate()
                .filter(|(_, r)| !r.values[k].intersection(*values).is_empty())
                .map(|(i, _)| i)
                .collect();
            survivors = survivors.intersection(&selected).copied().collect();
        }
        if survivors.is_empty() {
            return Err(Error::NoCaseSurvives);
        }
        let records = survivors.into_iter().map(|i| self.records[i].clone()).collect();
        CaseTable::new(self.frame.clone(), records)?.bpa()
    }

    fn checked_event(&self, var: &str, values: ValueSet) -> Result<usize> {
        let k = self.frame.require(var)?;
        if values.is_empty() {
            return Err(Error::EmptyComponent(var.into()));
        }
        if !values.is_subset(ValueSet::full(self.frame.variable(k).domain_size())) {
            return Err(Error::FrameMismatch);
        }
        Ok(k)
    }
}

/// Belief function on `frame` induced by a distribution over source labels
/// and a multivalued mapping from each label to a nonempty set.
pub fn random_set_lift(
    frame: Arc<JointFrame>,
    distribution: &[(String, Rational)],
    mapping: &BTreeMap<String, FocalSet>,
) -> Result<MassFunction> {
    let total: Rational = distribution.iter().map(|(_, p)| p).sum();
    if distribution.iter().any(|(_, p)| p.is_negative()) || total != Rational::from_integer(1.into()) {
        return Err(Error::InvalidDistribution);
    }
    let mut assignments = Vec::new();
    for (label, p) in distribution {
        if p.is_zero() {
            continue;
        }
        let set = mapping.get(label).ok_or_else(|| Error::MissingMapping(label.clone()))?;
        frame.check_set(set)?;
        if set.is_empty() {
            return Err(Error::MassOnEmptySet);
        }
        assignments.push((set.clone(), p.clone()));
    }
    MassFunction::new(frame, assignments)
}
