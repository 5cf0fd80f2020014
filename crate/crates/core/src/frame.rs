//! Variables, joint frames and the per-variable view of focal sets.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::set::FocalSet;

/// Largest joint frame the kernel will enumerate.
pub const MAX_CONFIGURATIONS: usize = 1 << 20;
/// Largest domain a single variable may have.
pub const MAX_DOMAIN: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    name: String,
    values: Vec<String>,
}

impl Variable {
    pub fn new<N, I, S>(name: N, values: I) -> Result<Self>
    where
        N: Into<String>,
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyVariableName);
        }
        let values: Vec<String> = values.into_iter().map(Into::into).collect();
        if values.is_empty() {
            return Err(Error::EmptyDomain(name));
        }
        if values.len() > MAX_DOMAIN {
            return Err(Error::DomainTooLarge { variable: name, size: values.len(), max: MAX_DOMAIN });
        }
        for (i, v) in values.iter().enumerate() {
            if values[..i].contains(v) {
                return Err(Error::DuplicateValue { variable: name, value: v.clone() });
            }
        }
        Ok(Self { name, values })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn value_index(&self, label: &str) -> Option<usize> {
        self.values.iter().position(|v| v == label)
    }

    pub fn value_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<ValueSet> {
        let mut set = ValueSet::EMPTY;
        for label in labels {
            let label = label.as_ref();
            let idx = self
                .value_index(label)
                .ok_or_else(|| Error::UnknownValue { variable: self.name.clone(), value: label.to_string() })?;
            set = set.with(idx);
        }
        if set.is_empty() {
            return Err(Error::EmptyComponent(self.name.clone()));
        }
        Ok(set)
    }

    pub fn labels(&self, set: ValueSet) -> Vec<&str> {
        set.iter().map(|i| self.values[i].as_str()).collect()
    }
}

/// Subset of one variable's domain, by value index.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ValueSet(u64);

impl ValueSet {
    pub const EMPTY: ValueSet = ValueSet(0);

    pub fn full(domain_size: usize) -> Self {
        if domain_size >= 64 {
            ValueSet(u64::MAX)
        } else {
            ValueSet((1u64 << domain_size) - 1)
        }
    }

    pub fn single(index: usize) -> Self {
        ValueSet(1 << index)
    }

    pub fn from_bits(bits: u64) -> Self {
        ValueSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn with(self, index: usize) -> Self {
        ValueSet(self.0 | 1 << index)
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 & (1 << index) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ValueSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ValueSet(self.0 & other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut w = self.0;
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let bit = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(bit)
        })
    }
}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ordered list of variables. Configurations are enumerated lexicographically
/// with the first variable most significant and values in domain order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JointFrame {
    variables: Vec<Variable>,
    strides: Vec<usize>,
    size: usize,
}

impl JointFrame {
    pub fn new(variables: Vec<Variable>) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::EmptyFrame);
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::DuplicateVariable(v.name.clone()));
            }
        }
        let mut strides = vec![0; variables.len()];
        let mut size: usize = 1;
        for (i, v) in variables.iter().enumerate().rev() {
            strides[i] = size;
            size = size
                .checked_mul(v.domain_size())
                .filter(|&s| s <= MAX_CONFIGURATIONS)
                .ok_or(Error::FrameTooLarge { size: usize::MAX, max: MAX_CONFIGURATIONS })?;
        }
        Ok(Self { variables, strides, size })
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable(&self, index: usize) -> &Variable {
        &self.variables[index]
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    /// Number of joint configurations.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.variables.iter().map(|v| v.name.as_str())
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn value_of(&self, config: usize, var: usize) -> usize {
        config / self.strides[var] % self.variables[var].domain_size()
    }

    pub fn decode(&self, config: usize) -> Vec<usize> {
        (0..self.variables.len()).map(|k| self.value_of(config, k)).collect()
    }

    pub fn encode(&self, values: &[usize]) -> usize {
        values.iter().zip(&self.strides).map(|(v, s)| v * s).sum()
    }

    pub fn full_set(&self) -> FocalSet {
        FocalSet::full(self.size)
    }

    pub fn empty_set(&self) -> FocalSet {
        FocalSet::empty(self.size)
    }

    pub fn value_set<S: AsRef<str>>(&self, variable: &str, labels: &[S]) -> Result<ValueSet> {
        let k = self.require(variable)?;
        self.variables[k].value_set(labels)
    }

    /// Cross product of one value set per variable, in frame order.
    pub fn box_set(&self, components: &[ValueSet]) -> Result<FocalSet> {
        if components.len() != self.variables.len() {
            return Err(Error::FrameMismatch);
        }
        for (v, c) in self.variables.iter().zip(components) {
            if c.is_empty() {
                return Err(Error::EmptyComponent(v.name.clone()));
            }
            if !c.is_subset(ValueSet::full(v.domain_size())) {
                return Err(Error::UnknownValue { variable: v.name.clone(), value: "?".to_string() });
            }
        }
        let mut set = self.empty_set();
        let lists: Vec<Vec<usize>> = components.iter().map(|c| c.iter().collect()).collect();
        let mut cursor = vec![0usize; lists.len()];
        'outer: loop {
            let config: usize = cursor.iter().enumerate().map(|(k, &i)| lists[k][i] * self.strides[k]).sum();
            set.insert(config);
            for k in (0..cursor.len()).rev() {
                cursor[k] += 1;
                if cursor[k] < lists[k].len() {
                    continue 'outer;
                }
                cursor[k] = 0;
            }
            break;
        }
        Ok(set)
    }

    /// Box from named components. Every variable of the frame must appear.
    pub fn box_of<S: AsRef<str>>(&self, components: &[(&str, &[S])]) -> Result<FocalSet> {
        for (name, _) in components {
            self.require(name)?;
        }
        let mut parts = Vec::with_capacity(self.variables.len());
        for v in &self.variables {
            let (_, labels) =
                components.iter().find(|(n, _)| *n == v.name).ok_or_else(|| Error::MissingComponent(v.name.clone()))?;
            parts.push(v.value_set(labels)?);
        }
        self.box_set(&parts)
    }

    /// Per-variable projections of a set.
    pub fn projections(&self, set: &FocalSet) -> Vec<ValueSet> {
        let mut out = vec![ValueSet::EMPTY; self.variables.len()];
        for config in set.iter() {
            for (k, slot) in out.iter_mut().enumerate() {
                *slot = slot.with(self.value_of(config, k));
            }
        }
        out
    }

    /// Components of `set` if it is a cross product, `None` otherwise.
    pub fn box_components(&self, set: &FocalSet) -> Option<Vec<ValueSet>> {
        if set.is_empty() {
            return None;
        }
        let parts = self.projections(set);
        let volume: usize = parts.iter().map(|p| p.len()).product();
        (volume == set.len()).then_some(parts)
    }

    pub fn is_box(&self, set: &FocalSet) -> bool {
        self.box_components(set).is_some()
    }

    /// Smallest box containing `set`.
    pub fn box_hull(&self, set: &FocalSet) -> FocalSet {
        if set.is_empty() {
            return set.clone();
        }
        self.box_set(&self.projections(set)).expect("projections of a nonempty set are nonempty")
    }

    /// Cylinder of a single-variable event.
    pub fn cylinder_of(&self, var: usize, values: ValueSet) -> FocalSet {
        let mut parts: Vec<ValueSet> = self.variables.iter().map(|v| ValueSet::full(v.domain_size())).collect();
        parts[var] = values;
        self.box_set(&parts).unwrap_or_else(|_| self.empty_set())
    }

    /// Subframe on the named variables, kept in this frame's order.
    pub fn subframe<S: AsRef<str>>(&self, names: &[S]) -> Result<JointFrame> {
        if names.is_empty() {
            return Err(Error::EmptyVariableSubset);
        }
        let mut keep = vec![false; self.variables.len()];
        for name in names {
            keep[self.require(name.as_ref())?] = true;
        }
        let vars = self.variables.iter().zip(&keep).filter(|(_, &k)| k).map(|(v, _)| v.clone()).collect();
        JointFrame::new(vars)
    }

    /// Subframe on the variables not named.
    pub fn complement_frame<S: AsRef<str>>(&self, names: &[S]) -> Result<JointFrame> {
        for n in names {
            self.require(n.as_ref())?;
        }
        let rest: Vec<&str> = self.names().filter(|n| !names.iter().any(|m| m.as_ref() == *n)).collect();
        if rest.is_empty() {
            return Err(Error::SubsetIsWholeFrame);
        }
        self.subframe(&rest)
    }

    /// True if every variable of `sub` is in this frame with the same domain.
    pub fn contains_frame(&self, sub: &JointFrame) -> bool {
        sub.variables.iter().all(|v| self.variables.contains(v))
    }

    /// For each configuration of `self`, the index of its restriction in `sub`.
    pub fn projection_map(&self, sub: &JointFrame) -> Result<Vec<usize>> {
        let mut positions = Vec::with_capacity(sub.variables.len());
        for v in &sub.variables {
            let k = self.index_of(&v.name).ok_or(Error::FrameMismatch)?;
            if self.variables[k] != *v {
                return Err(Error::FrameMismatch);
            }
            positions.push(k);
        }
        Ok((0..self.size)
            .map(|c| positions.iter().enumerate().map(|(j, &k)| self.value_of(c, k) * sub.strides[j]).sum())
            .collect())
    }

    /// Restrictions of the members of `set` to `sub`.
    pub fn project_set(&self, set: &FocalSet, sub: &JointFrame) -> Result<FocalSet> {
        self.check_set(set)?;
        let map = self.projection_map(sub)?;
        Ok(project_with(&map, set, sub.size))
    }

    /// Vacuous extension of a set over `sub` into this frame.
    pub fn cylinder(&self, set: &FocalSet, sub: &JointFrame) -> Result<FocalSet> {
        sub.check_set(set)?;
        let map = self.projection_map(sub)?;
        Ok(cylinder_with(&map, set))
    }

    pub(crate) fn check_set(&self, set: &FocalSet) -> Result<()> {
        if set.universe() == self.size {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    /// Value labels of a configuration, one per variable.
    pub fn config_labels(&self, config: usize) -> Vec<&str> {
        (0..self.variables.len()).map(|k| self.variables[k].values[self.value_of(config, k)].as_str()).collect()
    }

    /// Configuration index of one label per variable.
    pub fn config_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        if labels.len() != self.variables.len() {
            return Err(Error::FrameMismatch);
        }
        let mut idx = Vec::with_capacity(labels.len());
        for (v, l) in self.variables.iter().zip(labels) {
            idx.push(
                v.value_index(l.as_ref())
                    .ok_or_else(|| Error::UnknownValue { variable: v.name.clone(), value: l.as_ref().to_string() })?,
            );
        }
        Ok(self.encode(&idx))
    }
}

pub(crate) fn project_with(map: &[usize], set: &FocalSet, sub_size: usize) -> FocalSet {
    let mut out = FocalSet::empty(sub_size);
    for c in set.iter() {
        out.insert(map[c]);
    }
    out
}

pub(crate) fn cylinder_with(map: &[usize], set: &FocalSet) -> FocalSet {
    FocalSet::from_indices(map.len(), (0..map.len()).filter(|&c| set.contains(map[c])))
}
