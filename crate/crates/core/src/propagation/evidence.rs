use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frame::{JointFrame, ValueSet};
use crate::mass::MassFunction;

use alloc::sync::Arc;

/// Observations `X_i ∈ A_i`, at most one per variable, kept as labels until
/// resolved against a frame.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvidenceSet {
    observations: BTreeMap<String, Vec<String>>,
}

impl EvidenceSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn observe<S: AsRef<str>>(&mut self, variable: &str, values: &[S]) -> Result<()> {
        if self.observations.contains_key(variable) {
            return Err(Error::DuplicateObservation(variable.into()));
        }
        self.observations.insert(variable.into(), values.iter().map(|v| v.as_ref().into()).collect());
        Ok(())
    }

    pub fn with<S: AsRef<str>>(mut self, variable: &str, values: &[S]) -> Result<Self> {
        self.observe(variable, values)?;
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn observations(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.observations.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    /// `(variable index, value set)` pairs in frame order.
    pub fn resolve(&self, frame: &JointFrame) -> Result<Vec<(usize, ValueSet)>> {
        let mut out = Vec::with_capacity(self.observations.len());
        for (name, labels) in &self.observations {
            let k = frame.require(name)?;
            let set = frame.variable(k).value_set(labels)?;
            if set.is_empty() {
                return Err(Error::EmptyComponent(name.clone()));
            }
            out.push((k, set));
        }
        out.sort_by_key(|(k, _)| *k);
        Ok(out)
    }
}

/// `⊕` of the categorical functions on the cylinders of the observations.
pub fn compose_evidence(evidence: &EvidenceSet, frame: &Arc<JointFrame>) -> Result<MassFunction> {
    let mut out = MassFunction::vacuous(frame.clone());
    for (k, set) in evidence.resolve(frame)? {
        let factor = MassFunction::categorical(frame.clone(), frame.cylinder_of(k, set))?;
        out = out.combine(&factor)?.0;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn composition_examples() {
        let f = corpus::box_ambiguity_frame();
        let ev = EvidenceSet::new().with("X", &["x1"]).unwrap();
        let m = compose_evidence(&ev, &f).unwrap();
        let cyl = f.box_of(&[("X", &["x1"][..]), ("Z", &["z1", "z2"][..])]).unwrap();
        assert_eq!(m, MassFunction::categorical(f.clone(), cyl).unwrap());
        assert!(compose_evidence(&EvidenceSet::new(), &f).unwrap().is_vacuous());

        let two = EvidenceSet::new().with("Z", &["z2"]).unwrap().with("X", &["x1", "x2"]).unwrap();
        let b = f.box_of(&[("X", &["x1", "x2"][..]), ("Z", &["z2"][..])]).unwrap();
        assert_eq!(compose_evidence(&two, &f).unwrap(), MassFunction::categorical(f.clone(), b).unwrap());
    }

    #[test]
    fn evidence_errors() {
        let f = corpus::box_ambiguity_frame();
        let mut ev = EvidenceSet::new();
        ev.observe("X", &["x1"]).unwrap();
        assert_eq!(ev.observe("X", &["x2"]), Err(Error::DuplicateObservation("X".into())));
        let bad = EvidenceSet::new().with("W", &["w"]).unwrap();
        assert_eq!(bad.resolve(&f), Err(Error::UnknownVariable("W".into())));
        let empty = EvidenceSet::new().with::<&str>("X", &[]).unwrap();
        assert_eq!(empty.resolve(&f), Err(Error::EmptyComponent("X".into())));
    }
}
