mod common;

use std::sync::Arc;

use casebelief_core::lattice::{belief_table, commonality_table, mass_from_belief};
use casebelief_core::rational::{int, ratio};
use casebelief_core::{corpus, sample, Classification, Error, FocalSet, JointFrame, MassFunction, Rational};
use common::{naive, power_set, set_of, Naive};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pair(seed: u64, max_size: usize) -> (MassFunction, MassFunction) {
    let mut r = rng(seed);
    let f = sample::frame(&mut r, 3, 3, max_size);
    (sample::proper_bpa(&mut r, &f, 5), sample::proper_bpa(&mut r, &f, 5))
}

fn mask_set(frame: &JointFrame, mask: u64) -> FocalSet {
    FocalSet::from_mask(frame.size(), mask)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_functions_match_brute_force(seed in any::<u64>()) {
        let (m, _) = pair(seed, 8);
        let n = naive(&m);
        let f = m.frame().clone();
        for mask in 0u64..1 << f.size() {
            let a = mask_set(&f, mask);
            let s = set_of(&f, &a);
            prop_assert_eq!(m.belief(&a).unwrap(), n.bel(&s));
            prop_assert_eq!(m.plausibility(&a).unwrap(), n.pl(&s));
            if mask != 0 {
                prop_assert_eq!(m.commonality(&a).unwrap(), n.q(&s));
            }
        }
    }

    #[test]
    fn mobius_roundtrip(seed in any::<u64>()) {
        let (m, _) = pair(seed, 12);
        let bel = belief_table(&m).unwrap();
        prop_assert_eq!(mass_from_belief(m.frame().clone(), &bel).unwrap(), m);
    }

    #[test]
    fn combination_matches_brute_force_and_multiplies_commonalities(seed in any::<u64>()) {
        let (a, b) = pair(seed, 8);
        match (a.combine(&b), naive(&a).combine(&naive(&b))) {
            (Ok((ab, k)), Some((expected, k_expected))) => {
                prop_assert_eq!(naive(&ab), expected);
                prop_assert_eq!(&k, &k_expected);
                let (qa, qb, qab) = (
                    commonality_table(&a).unwrap(),
                    commonality_table(&b).unwrap(),
                    commonality_table(&ab).unwrap(),
                );
                let one_minus_k = Rational::one() - &k;
                for s in 1..qab.len() {
                    prop_assert_eq!(&qab[s] * &one_minus_k, &qa[s] * &qb[s]);
                }
            }
            (Err(Error::TotalConflict), None) => {}
            (got, want) => prop_assert!(false, "kernel {:?} vs brute force {:?}", got, want),
        }
    }

    #[test]
    fn combination_is_commutative_and_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = sample::frame(&mut r, 3, 3, 8);
        let (a, b, c) = (
            sample::proper_bpa(&mut r, &f, 4),
            sample::proper_bpa(&mut r, &f, 4),
            sample::proper_bpa(&mut r, &f, 4),
        );
        prop_assert_eq!(a.combine(&b).ok(), b.combine(&a).ok());
        let left = a.combine(&b).and_then(|(ab, _)| ab.combine(&c));
        let right = b.combine(&c).and_then(|(bc, _)| a.combine(&bc));
        if let (Ok((l, _)), Ok((r, _))) = (left, right) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn vacuous_is_neutral(seed in any::<u64>()) {
        let (m, _) = pair(seed, 12);
        let (out, k) = m.combine(&MassFunction::vacuous(m.frame().clone())).unwrap();
        prop_assert_eq!(out, m);
        prop_assert!(k.is_zero());
    }

    #[test]
    fn marginalize_and_extend(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = sample::frame(&mut r, 3, 3, 12);
        let m = sample::proper_bpa(&mut r, &f, 5);
        let keep: Vec<usize> = (0..f.num_variables()).filter(|_| r.gen_bool(0.6)).collect();
        prop_assume!(!keep.is_empty());
        let names: Vec<&str> = keep.iter().map(|&k| f.variable(k).name()).collect();
        let marginal = m.marginalize(&names).unwrap();
        prop_assert_eq!(naive(&marginal), naive(&m).marginalize(&keep));
        let extended = marginal.vacuous_extend(&f).unwrap();
        prop_assert_eq!(naive(&extended), naive(&marginal).extend(&common::sizes_of(&f), &keep));
        prop_assert_eq!(extended.marginalize(&names).unwrap(), marginal);
    }

    #[test]
    fn belief_axioms(seed in any::<u64>()) {
        let (m, _) = pair(seed, 8);
        let f = m.frame().clone();
        let full = (1u64 << f.size()) - 1;
        prop_assert!(m.belief(&f.empty_set()).unwrap().is_zero());
        prop_assert!(m.belief(&f.full_set()).unwrap().is_one());
        for mask in 0..=full {
            let a = mask_set(&f, mask);
            let bel = m.belief(&a).unwrap();
            prop_assert_eq!(m.plausibility(&a).unwrap(), Rational::one() - m.belief(&a.complement()).unwrap());
            // Adding any one element never lowers belief.
            for i in 0..f.size() {
                let mut bigger = a.clone();
                bigger.insert(i);
                prop_assert!(m.belief(&bigger).unwrap() >= bel);
            }
        }
    }

    #[test]
    fn proper_inputs_combine_to_proper(seed in any::<u64>()) {
        let (a, b) = pair(seed, 12);
        if let Ok((ab, _)) = a.combine(&b) {
            prop_assert_eq!(ab.classify(), Classification::Proper);
        }
    }

    #[test]
    fn shafer_conditioning_matches_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = sample::frame(&mut r, 3, 3, 12);
        let m = sample::box_bpa(&mut r, &f, 5);
        let var = r.gen_range(0..f.num_variables());
        let d = f.variable(var).domain_size();
        let bits = r.gen_range(1..1u64 << d);
        let values: Vec<usize> = (0..d).filter(|i| bits >> i & 1 == 1).collect();
        let n = naive(&m);
        let got = m.condition_shafer(f.variable(var).name(), casebelief_core::ValueSet::from_bits(bits));
        match (got, n.condition(&n.cylinder(var, &values))) {
            (Ok(c), Some(expected)) => prop_assert_eq!(naive(&c), expected),
            (Err(Error::TotalConflict), None) => {}
            (got, want) => prop_assert!(false, "kernel {:?} vs brute force {:?}", got, want),
        }
    }

    #[test]
    fn box_hull_is_idempotent_and_boxes_project_to_boxes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = sample::frame(&mut r, 3, 3, 12);
        let m = sample::proper_bpa(&mut r, &f, 5);
        let hull = m.box_hull();
        prop_assert!(hull.all_boxes());
        prop_assert_eq!(hull.box_hull(), hull.clone());
        let b = sample::box_bpa(&mut r, &f, 5);
        prop_assert_eq!(b.box_hull(), b.clone());
        let first = Arc::new(f.subframe(&[f.variable(0).name()]).unwrap());
        for set in b.focal_sets() {
            let parts = f.box_components(set).unwrap();
            prop_assert_eq!(f.project_set(set, &first).unwrap(), first.box_set(&parts[..1]).unwrap());
        }
    }
}

#[test]
fn bel_and_marginals_by_grouping_rows() {
    // Group-and-sum of the nine table rows by one component.
    let cases = corpus::bel_and_cases();
    let total = Rational::from_integer(cases.total().into());
    for (var, name) in [(2usize, "Z"), (0, "X")] {
        let mut expected: std::collections::BTreeMap<u64, Rational> = Default::default();
        for rec in cases.records() {
            *expected.entry(rec.values[var].bits()).or_insert_with(Rational::zero) +=
                Rational::from_integer(rec.count.into()) / &total;
        }
        let marginal = corpus::bel_and_mass().marginalize(&[name]).unwrap();
        let got: std::collections::BTreeMap<u64, Rational> =
            marginal.focals().map(|(s, v)| (s.to_mask().unwrap(), v.clone())).collect();
        assert_eq!(got, expected);
    }
    let z = corpus::bel_and_mass().marginalize(&["Z"]).unwrap();
    assert_eq!(z.mass(&FocalSet::from_mask(2, 0b01)), ratio(1, 10));
    assert_eq!(z.mass(&FocalSet::from_mask(2, 0b10)), ratio(1, 2));
    assert_eq!(z.mass(&FocalSet::from_mask(2, 0b11)), ratio(2, 5));
}

#[test]
fn bel_and_focals_are_table_boxes() {
    let m = corpus::bel_and_mass();
    let f = m.frame().clone();
    for rec in corpus::bel_and_cases().records() {
        let set = f.box_set(&rec.values).unwrap();
        // The box of the row equals the explicit cross product of its cells.
        let cross: common::Set = common::all_tuples(&common::sizes_of(&f))
            .into_iter()
            .filter(|t| t.iter().zip(&rec.values).all(|(&v, cell)| cell.contains(v)))
            .collect();
        assert_eq!(set_of(&f, &set), cross);
        assert!(m.mass(&set) > Rational::zero());
    }
    assert_eq!(m.box_hull(), m);
}

#[test]
fn small_derived_values() {
    let y = corpus::y_table_mass();
    let f = y.frame().clone();
    let n = naive(&y);
    let x1 = FocalSet::from_mask(3, 0b001);
    let sets = power_set(&common::sizes_of(&f));
    let x23: common::Set = sets.iter().find(|s| s.len() == 2 && !s.contains(&vec![0])).unwrap().clone();
    assert_eq!(y.plausibility(&x1).unwrap(), Rational::one() - n.bel(&x23));
    assert_eq!(y.plausibility(&x1).unwrap(), ratio(3, 10));

    let x = Arc::new(corpus::box_ambiguity_frame().subframe(&["X"]).unwrap());
    let m = MassFunction::new(
        x.clone(),
        [(FocalSet::from_mask(2, 0b01), ratio(1, 2)), (FocalSet::from_mask(2, 0b11), ratio(1, 2))],
    )
    .unwrap();
    let nm = naive(&m);
    assert_eq!(m.commonality(&FocalSet::from_mask(2, 0b01)).unwrap(), nm.q(&[vec![0]].into()));
    assert_eq!(nm.q(&[vec![0]].into()), int(1));
    assert_eq!(nm.q(&[vec![1]].into()), ratio(1, 2));

    let diag = &corpus::box_ambiguity_masses()[1];
    let z = diag.marginalize(&["Z"]).unwrap();
    assert_eq!(naive(&z), naive(diag).marginalize(&[1]));
    assert!(z.is_vacuous());

    let xz = corpus::box_ambiguity_frame();
    let ext = MassFunction::categorical(x, FocalSet::from_mask(2, 0b01)).unwrap().vacuous_extend(&xz).unwrap();
    let expected: common::Set = [vec![0, 0], vec![0, 1]].into();
    assert_eq!(naive(&ext).focals, [(expected, int(1))].into());
}

#[test]
fn pseudo_and_invalid_classification_by_direct_commonality() {
    let x = Arc::new(corpus::box_ambiguity_frame().subframe(&["X"]).unwrap());
    let invalid = Naive {
        sizes: vec![2],
        focals: [([vec![0]].into(), ratio(3, 2)), ([vec![0], vec![1]].into(), ratio(-1, 2))].into(),
    };
    let pseudo = Naive {
        sizes: vec![2],
        focals: [
            ([vec![0], vec![1]].into(), ratio(3, 2)),
            ([vec![0]].into(), ratio(-1, 4)),
            ([vec![1]].into(), ratio(-1, 4)),
        ]
        .into(),
    };
    let to_mass = |n: &Naive| {
        MassFunction::new(
            x.clone(),
            n.focals.iter().map(|(s, v)| (FocalSet::from_indices(2, s.iter().map(|t| t[0])), v.clone())),
        )
        .unwrap()
    };
    let nonempty: Vec<common::Set> = power_set(&[2]).into_iter().filter(|s| !s.is_empty()).collect();
    assert!(nonempty.iter().any(|s| invalid.q(s) < Rational::zero()));
    assert!(nonempty.iter().all(|s| pseudo.q(s) >= Rational::zero()));
    assert_eq!(to_mass(&invalid).classify(), Classification::Invalid);
    assert_eq!(to_mass(&pseudo).classify(), Classification::Pseudo);
}
