//! Seeded random instances for sweeps and property tests.
//!
//! Every generator draws from the supplied RNG only, so a fixed seed gives a
//! fixed instance. Masses are integer weights in `1..=9`, normalized.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use crate::frame::{JointFrame, ValueSet, Variable};
use crate::mass::MassFunction;
use crate::rational::Rational;
use crate::set::FocalSet;

/// Frame with 1 to `max_vars` variables `V0, V1, …`, each with 2 to
/// `max_values` values `v0, v1, …`, and at most `max_size` configurations.
pub fn frame<R: Rng>(rng: &mut R, max_vars: usize, max_values: usize, max_size: usize) -> Arc<JointFrame> {
    assert!(max_vars >= 1 && max_values >= 2 && max_size >= 2);
    loop {
        let n = rng.gen_range(1..=max_vars);
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(2..=max_values)).collect();
        if sizes.iter().product::<usize>() <= max_size {
            return uniform_frame(&sizes);
        }
    }
}

/// Frame with one variable per entry of `sizes`.
pub fn uniform_frame(sizes: &[usize]) -> Arc<JointFrame> {
    let vars = sizes
        .iter()
        .enumerate()
        .map(|(i, &d)| Variable::new(format!("V{i}"), (0..d).map(|j| format!("v{j}"))).expect("valid variable"))
        .collect();
    Arc::new(JointFrame::new(vars).expect("valid frame"))
}

fn weighted<R: Rng>(rng: &mut R, frame: &Arc<JointFrame>, sets: Vec<FocalSet>) -> MassFunction {
    let weights: Vec<i64> = sets.iter().map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    let assignments = sets.into_iter().zip(weights).map(|(s, w)| (s, Rational::new(w.into(), total.into())));
    MassFunction::new(frame.clone(), assignments).expect("positive weights on nonempty sets")
}

fn nonempty_subset<R: Rng>(rng: &mut R, universe: usize) -> FocalSet {
    loop {
        let set = FocalSet::from_indices(universe, (0..universe).filter(|_| rng.gen_bool(0.5)));
        if !set.is_empty() {
            return set;
        }
    }
}

fn nonempty_values<R: Rng>(rng: &mut R, domain: usize) -> ValueSet {
    ValueSet::from_bits(rng.gen_range(1..1u64 << domain))
}

/// Up to `max_focals` arbitrary nonempty focal sets.
pub fn proper_bpa<R: Rng>(rng: &mut R, frame: &Arc<JointFrame>, max_focals: usize) -> MassFunction {
    let k = rng.gen_range(1..=max_focals);
    let sets = (0..k).map(|_| nonempty_subset(rng, frame.size())).collect();
    weighted(rng, frame, sets)
}

/// Up to `max_focals` box focal sets.
pub fn box_bpa<R: Rng>(rng: &mut R, frame: &Arc<JointFrame>, max_focals: usize) -> MassFunction {
    let k = rng.gen_range(1..=max_focals);
    let sets = (0..k)
        .map(|_| {
            let parts: Vec<ValueSet> =
                frame.variables().iter().map(|v| nonempty_values(rng, v.domain_size())).collect();
            frame.box_set(&parts).expect("nonempty components")
        })
        .collect();
    weighted(rng, frame, sets)
}

/// Up to `max_focals` singleton focal sets: a probability distribution.
pub fn singleton_bpa<R: Rng>(rng: &mut R, frame: &Arc<JointFrame>, max_focals: usize) -> MassFunction {
    let k = rng.gen_range(1..=max_focals);
    let sets = (0..k).map(|_| FocalSet::singleton(frame.size(), rng.gen_range(0..frame.size()))).collect();
    weighted(rng, frame, sets)
}

/// Up to `max_focals` focal sets of the form `⋃_ξ {ξ} × a(ξ)` with every
/// `a(ξ)` nonempty: a Cano-type conditional of the other variables given
/// `given`.
pub fn cano_conditional<R: Rng, S: AsRef<str>>(
    rng: &mut R,
    frame: &Arc<JointFrame>,
    given: &[S],
    max_focals: usize,
) -> MassFunction {
    let idx: Vec<usize> = given.iter().map(|g| frame.require(g.as_ref()).expect("known variable")).collect();
    let k = rng.gen_range(1..=max_focals);
    let sets = (0..k)
        .map(|_| {
            // Configurations sharing a parent value form a class; keep a
            // random nonempty part of each.
            let mut set = FocalSet::empty(frame.size());
            let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            for c in 0..frame.size() {
                let key: Vec<usize> = idx.iter().map(|&v| frame.value_of(c, v)).collect();
                classes.entry(key).or_default().push(c);
            }
            for members in classes.values() {
                let mut any = false;
                for &c in members {
                    if rng.gen_bool(0.5) {
                        set.insert(c);
                        any = true;
                    }
                }
                if !any {
                    set.insert(members[rng.gen_range(0..members.len())]);
                }
            }
            set
        })
        .collect();
    weighted(rng, frame, sets)
}
