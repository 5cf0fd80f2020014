//! Brute-force reference implementation over explicit tuples.
//!
//! Focal sets are `BTreeSet`s of value-index tuples and every operation is
//! the textbook double loop, so nothing here shares code with the bitset
//! kernel beyond reading a frame's domain sizes.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use casebelief_core::{FocalSet, JointFrame, MassFunction, Rational};
use num_traits::{One, Zero};

pub type Tuple = Vec<usize>;
pub type Set = BTreeSet<Tuple>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Naive {
    pub sizes: Vec<usize>,
    pub focals: BTreeMap<Set, Rational>,
}

/// Value indices of configuration `c`, last variable fastest.
pub fn tuple_of(sizes: &[usize], mut c: usize) -> Tuple {
    let mut t = vec![0; sizes.len()];
    for i in (0..sizes.len()).rev() {
        t[i] = c % sizes[i];
        c /= sizes[i];
    }
    t
}

pub fn all_tuples(sizes: &[usize]) -> Vec<Tuple> {
    let n: usize = sizes.iter().product();
    (0..n).map(|c| tuple_of(sizes, c)).collect()
}

pub fn sizes_of(frame: &JointFrame) -> Vec<usize> {
    frame.variables().iter().map(|v| v.domain_size()).collect()
}

pub fn set_of(frame: &JointFrame, set: &FocalSet) -> Set {
    let sizes = sizes_of(frame);
    set.iter().map(|c| tuple_of(&sizes, c)).collect()
}

pub fn naive(m: &MassFunction) -> Naive {
    let sizes = sizes_of(m.frame());
    let focals = m.focals().map(|(s, v)| (s.iter().map(|c| tuple_of(&sizes, c)).collect(), v.clone())).collect();
    Naive { sizes, focals }
}

/// Every subset of the frame, as explicit sets.
pub fn power_set(sizes: &[usize]) -> Vec<Set> {
    let all = all_tuples(sizes);
    (0u64..1 << all.len())
        .map(|bits| all.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, t)| t.clone()).collect())
        .collect()
}

impl Naive {
    pub fn bel(&self, a: &Set) -> Rational {
        self.focals.iter().filter(|(b, _)| !b.is_empty() && b.is_subset(a)).map(|(_, v)| v).sum()
    }

    pub fn pl(&self, a: &Set) -> Rational {
        self.focals.iter().filter(|(b, _)| !b.is_disjoint(a)).map(|(_, v)| v).sum()
    }

    pub fn q(&self, a: &Set) -> Rational {
        self.focals.iter().filter(|(b, _)| a.is_subset(b)).map(|(_, v)| v).sum()
    }

    /// Normalized combination and the conflict, or `None` on total conflict.
    pub fn combine(&self, other: &Naive) -> Option<(Naive, Rational)> {
        assert_eq!(self.sizes, other.sizes);
        let mut raw: BTreeMap<Set, Rational> = BTreeMap::new();
        let mut k = Rational::zero();
        for (a, x) in &self.focals {
            for (b, y) in &other.focals {
                let c: Set = a.intersection(b).cloned().collect();
                if c.is_empty() {
                    k += x * y;
                } else {
                    *raw.entry(c).or_insert_with(Rational::zero) += x * y;
                }
            }
        }
        if k.is_one() {
            return None;
        }
        let norm = Rational::one() - &k;
        let focals = raw.into_iter().filter(|(_, v)| !v.is_zero()).map(|(s, v)| (s, v / &norm)).collect();
        Some((Naive { sizes: self.sizes.clone(), focals }, k))
    }

    /// Projection onto the variables at `keep` (ascending positions).
    pub fn marginalize(&self, keep: &[usize]) -> Naive {
        let mut focals: BTreeMap<Set, Rational> = BTreeMap::new();
        for (a, v) in &self.focals {
            let p: Set = a.iter().map(|t| keep.iter().map(|&i| t[i]).collect()).collect();
            *focals.entry(p).or_insert_with(Rational::zero) += v;
        }
        focals.retain(|_, v| !v.is_zero());
        Naive { sizes: keep.iter().map(|&i| self.sizes[i]).collect(), focals }
    }

    /// Cylinder extension to `sizes`, this function's variables sitting at
    /// positions `at`.
    pub fn extend(&self, sizes: &[usize], at: &[usize]) -> Naive {
        let all = all_tuples(sizes);
        let focals = self
            .focals
            .iter()
            .map(|(a, v)| {
                let cyl: Set =
                    all.iter().filter(|t| a.contains(&at.iter().map(|&i| t[i]).collect::<Tuple>())).cloned().collect();
                (cyl, v.clone())
            })
            .collect();
        Naive { sizes: sizes.to_vec(), focals }
    }

    /// `⊕` with the categorical function on `event`.
    pub fn condition(&self, event: &Set) -> Option<Naive> {
        let cat = Naive { sizes: self.sizes.clone(), focals: BTreeMap::from([(event.clone(), Rational::one())]) };
        self.combine(&cat).map(|(m, _)| m)
    }

    pub fn cylinder(&self, var: usize, values: &[usize]) -> Set {
        all_tuples(&self.sizes).into_iter().filter(|t| values.contains(&t[var])).collect()
    }
}
