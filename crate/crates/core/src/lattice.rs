//! Zeta and Möbius transforms over the subset lattice of a frame.
//!
//! Dense tables are indexed by the membership mask of a subset (see
//! [`FocalSet::to_mask`]). Each transform is `n` butterfly passes over a table
//! of `2ⁿ` entries. Rational tables are brought to a common denominator first
//! so the passes run on integers.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::frame::JointFrame;
use crate::mass::MassFunction;
use crate::rational::Rational;
use crate::set::FocalSet;

/// Largest frame for which dense tables are built.
pub const DENSE_LIMIT: usize = 20;

fn check_dense(frame: &JointFrame) -> Result<usize> {
    let n = frame.size();
    if n > DENSE_LIMIT {
        return Err(Error::FrameTooLarge { size: n, max: DENSE_LIMIT });
    }
    Ok(n)
}

fn butterfly<T>(table: &mut [T], mut op: impl FnMut(&mut T, &mut T)) {
    let n = table.len();
    let mut half = 1;
    while half < n {
        for block in table.chunks_exact_mut(half * 2) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi) {
                op(a, b);
            }
        }
        half *= 2;
    }
}

/// In place: `t[A] ← Σ_{B ⊆ A} t[B]`.
pub fn subset_zeta(table: &mut [BigInt]) {
    butterfly(table, |lo, hi| *hi += &*lo);
}

/// Inverse of [`subset_zeta`].
pub fn subset_mobius(table: &mut [BigInt]) {
    butterfly(table, |lo, hi| *hi -= &*lo);
}

/// In place: `t[A] ← Σ_{B ⊇ A} t[B]`.
pub fn superset_zeta(table: &mut [BigInt]) {
    butterfly(table, |lo, hi| *lo += &*hi);
}

/// Inverse of [`superset_zeta`].
pub fn superset_mobius(table: &mut [BigInt]) {
    butterfly(table, |lo, hi| *lo -= &*hi);
}

fn to_integers(values: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let denom = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints = values.iter().map(|v| v.numer() * (&denom / v.denom())).collect();
    (ints, denom)
}

fn from_integers(ints: Vec<BigInt>, denom: &BigInt) -> Vec<Rational> {
    ints.into_iter().map(|n| Rational::new(n, denom.clone())).collect()
}

fn mass_table(m: &MassFunction) -> Result<Vec<Rational>> {
    let n = check_dense(m.frame())?;
    let mut table = vec![Rational::zero(); 1 << n];
    for (set, mass) in m.focals() {
        table[set.to_mask().expect("dense frame") as usize] = mass.clone();
    }
    Ok(table)
}

/// Bel on every subset, indexed by mask.
pub fn belief_table(m: &MassFunction) -> Result<Vec<Rational>> {
    let (mut ints, denom) = to_integers(&mass_table(m)?);
    subset_zeta(&mut ints);
    Ok(from_integers(ints, &denom))
}

/// Q on every subset, indexed by mask. Entry 0 is Q(∅) = 1.
pub fn commonality_table(m: &MassFunction) -> Result<Vec<Rational>> {
    let (mut ints, denom) = to_integers(&mass_table(m)?);
    superset_zeta(&mut ints);
    Ok(from_integers(ints, &denom))
}

/// Recovers the mass function whose belief is `bel` (indexed by mask).
pub fn mass_from_belief(frame: Arc<JointFrame>, bel: &[Rational]) -> Result<MassFunction> {
    let n = check_dense(&frame)?;
    if bel.len() != 1 << n {
        return Err(Error::BeliefTableSize { expected: 1 << n, found: bel.len() });
    }
    if !bel[0].is_zero() || !bel[bel.len() - 1].is_one() {
        return Err(Error::BeliefBoundary);
    }
    let (mut ints, denom) = to_integers(bel);
    subset_mobius(&mut ints);
    let masses = from_integers(ints, &denom);
    MassFunction::new(
        frame,
        masses
            .into_iter()
            .enumerate()
            .filter(|(_, m)| !m.is_zero())
            .map(|(mask, m)| (FocalSet::from_mask(n, mask as u64), m)),
    )
}

/// Möbius inversion restricted to a candidate family that contains every
/// focal set. Works on frames of any size; cost is quadratic in the family.
pub fn mass_from_belief_sparse<F>(frame: Arc<JointFrame>, candidates: &[FocalSet], bel: F) -> Result<MassFunction>
where
    F: Fn(&FocalSet) -> Rational,
{
    let mut ordered: Vec<&FocalSet> = candidates.iter().filter(|s| !s.is_empty()).collect();
    ordered.sort_by_key(|s| (s.len(), (*s).clone()));
    ordered.dedup();
    let mut masses: BTreeMap<FocalSet, Rational> = BTreeMap::new();
    for set in ordered {
        frame.check_set(set)?;
        let below: Rational = masses.iter().filter(|(b, _)| b.is_subset(set) && *b != set).map(|(_, m)| m).sum();
        let m = bel(set) - below;
        if !m.is_zero() {
            masses.insert(set.clone(), m);
        }
    }
    MassFunction::new(frame, masses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::rational::ratio;

    #[test]
    fn y_table_roundtrip() {
        let m = corpus::y_table_mass();
        let bel = belief_table(&m).unwrap();
        assert_eq!(bel[0b110], ratio(7, 10));
        assert_eq!(bel[0b011], ratio(3, 10));
        assert_eq!(mass_from_belief(m.frame().clone(), &bel).unwrap(), m);
        let q = commonality_table(&m).unwrap();
        assert_eq!(q[0], ratio(1, 1));
        assert_eq!(q[0b010], ratio(1, 2));
    }

    #[test]
    fn vacuous_roundtrip() {
        let f = corpus::y_table_mass().frame().clone();
        let v = MassFunction::vacuous(f.clone());
        let bel = belief_table(&v).unwrap();
        assert!(bel[..7].iter().all(Zero::is_zero));
        assert!(mass_from_belief(f, &bel).unwrap().is_vacuous());
    }

    #[test]
    fn boundary_errors() {
        let f = corpus::y_table_mass().frame().clone();
        assert_eq!(
            mass_from_belief(f.clone(), &vec![Rational::zero(); 4]),
            Err(Error::BeliefTableSize { expected: 8, found: 4 })
        );
        assert_eq!(mass_from_belief(f, &vec![Rational::zero(); 8]), Err(Error::BeliefBoundary));
    }

    #[test]
    fn sparse_matches_dense() {
        let m = corpus::bel_and_mass();
        let cands: Vec<FocalSet> = m.focal_sets().cloned().collect();
        let sparse = mass_from_belief_sparse(m.frame().clone(), &cands, |s| m.belief(s).unwrap()).unwrap();
        assert_eq!(sparse, m);
        let dense = mass_from_belief(m.frame().clone(), &belief_table(&m).unwrap()).unwrap();
        assert_eq!(dense, m);
    }
}
