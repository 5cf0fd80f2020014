use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::corpus;
use crate::error::Error;
use crate::mass::MassFunction;
use crate::rational::ratio;
use crate::set::FocalSet;

fn single(m: &MassFunction, name: &str, labels: &[&str]) -> MassFunction {
    let f = m.frame().clone();
    let set = f.box_of(&[(name, labels)]).unwrap();
    MassFunction::categorical(f, set).unwrap()
}

#[test]
fn corpus_networks_are_valid() {
    for net in [corpus::chain_net(), corpus::collider_net(), corpus::forty_sixty_net()] {
        assert_eq!(net.validate(), Vec::new());
    }
}

#[test]
fn structural_violations() {
    let chain = corpus::chain_net();
    let f = chain.frame().clone();
    let vals = |net: &EvidentialPolytree| -> Vec<(&str, MassFunction)> {
        ["X", "Y", "Z"].into_iter().map(|n| (n, net.valuation(n).unwrap().clone())).collect()
    };

    let diamond = EvidentialPolytree::new(f.clone(), &[("X", "Y"), ("Y", "Z"), ("X", "Z")], vals(&chain)).unwrap();
    let kinds: Vec<&str> = diamond.validate().iter().map(Violation::kind).collect();
    assert!(kinds.contains(&"multiple-paths"));
    assert!(kinds.contains(&"scope-mismatch"));

    let cyc = EvidentialPolytree::new(f.clone(), &[("X", "Y"), ("Y", "X"), ("Y", "Z")], vals(&chain)).unwrap();
    let kinds: Vec<&str> = cyc.validate().iter().map(Violation::kind).collect();
    assert!(kinds.contains(&"cycle"));

    let split = EvidentialPolytree::new(f.clone(), &[("X", "Y")], vals(&chain)).unwrap();
    assert!(split.validate().contains(&Violation::Disconnected("Z".into())));

    let missing = EvidentialPolytree::new(f.clone(), &[("X", "Y"), ("Y", "Z")], vals(&chain)[..2].to_vec()).unwrap();
    assert_eq!(missing.validate(), vec![Violation::MissingValuation("Z".into())]);

    let dup = vec![("X", chain.valuation("X").unwrap().clone()), ("X", chain.valuation("X").unwrap().clone())];
    assert!(matches!(EvidentialPolytree::new(f.clone(), &[("X", "Y")], dup), Err(Error::InvalidNetwork(_))));
    assert_eq!(EvidentialPolytree::new(f, &[("X", "W")], vals(&chain)).err(), Some(Error::UnknownVariable("W".into())));
}

#[test]
fn non_cano_valuation_is_reported() {
    let chain = corpus::chain_net();
    let f = chain.frame().clone();
    let xy = alloc::sync::Arc::new(f.subframe(&["X", "Y"]).unwrap());
    let partial =
        MassFunction::categorical(xy.clone(), xy.box_of(&[("X", &["t"][..]), ("Y", &["t", "f"][..])]).unwrap())
            .unwrap();
    let vals = vec![
        ("X", chain.valuation("X").unwrap().clone()),
        ("Y", partial),
        ("Z", chain.valuation("Z").unwrap().clone()),
    ];
    let net = EvidentialPolytree::new(f, &[("X", "Y"), ("Y", "Z")], vals).unwrap();
    assert_eq!(net.validate(), vec![Violation::NonCanoValuation("Y".into())]);
}

#[test]
fn reorienting_a_chain_reverses_without_adding() {
    let net = corpus::chain_net();
    let o = reorient_for_target(&net, "X", &default_reorient_options()).unwrap();
    assert_eq!(o.target(), "X");
    assert_eq!(o.reversed_edges(), vec![("X", "Y"), ("Y", "Z")]);
    assert!(o.added_edges().is_empty());
    assert_eq!(o.parents("X").unwrap(), vec!["Y"]);
    assert_eq!(o.parents("Z").unwrap(), Vec::<&str>::new());
    // The copy graphs are not boxes, so both recomputed families are hulled.
    assert_eq!(o.warnings().len(), 2);
    assert_eq!(o.qualities().len(), 2);

    let same = reorient_for_target(&net, "Z", &default_reorient_options()).unwrap();
    assert!(same.reversed_edges().is_empty());
    assert!(same.qualities().is_empty());
    for v in ["X", "Y", "Z"] {
        assert_eq!(same.valuation(v), net.valuation(v));
    }
}

#[test]
fn reorienting_a_collider_adds_the_co_parent() {
    let net = corpus::collider_net();
    let o = reorient_for_target(&net, "Y", &default_reorient_options()).unwrap();
    assert_eq!(o.reversed_edges(), vec![("Y", "Z")]);
    assert_eq!(o.added_edges(), vec![("X", "Y")]);
    assert_eq!(o.parents("Y").unwrap(), vec!["X", "Z"]);
    assert_eq!(o.edges(), vec![("X", "Y"), ("X", "Z"), ("Z", "Y")]);
    // X keeps its original marginal; Y is recomputed on {X, Y, Z}.
    assert_eq!(o.valuation("X"), net.valuation("X"));
    assert_eq!(o.valuation("Y").unwrap().frame().num_variables(), 3);
}

#[test]
fn no_evidence_matches_the_oracle() {
    let none = EvidenceSet::new();
    for (net, target) in [(corpus::chain_net(), "Z"), (corpus::collider_net(), "Z"), (corpus::forty_sixty_net(), "Z")] {
        let o = reorient_for_target(&net, target, &default_reorient_options()).unwrap();
        assert_eq!(propagate(&o, &none).unwrap(), oracle_marginal(&net, &none, target).unwrap());
    }
}

#[test]
fn forward_evidence_matches_the_oracle() {
    let net = corpus::chain_net();
    let ev = EvidenceSet::new().with("X", &["t"]).unwrap();
    let o = reorient_for_target(&net, "Z", &default_reorient_options()).unwrap();
    let got = propagate(&o, &ev).unwrap();
    assert_eq!(got, oracle_marginal(&net, &ev, "Z").unwrap());
    // Two copy steps: {t} with (2/3)^2, otherwise vacuous.
    let z = got.frame().clone();
    assert_eq!(got.mass(&FocalSet::from_mask(2, 0b01)), ratio(4, 9));
    assert_eq!(got.mass(&z.full_set()), ratio(5, 9));
}

#[test]
fn schedules_give_the_same_answer() {
    let net = corpus::chain_net();
    let ev = EvidenceSet::new().with("Z", &["f"]).unwrap();
    let o = reorient_for_target(&net, "Y", &default_reorient_options()).unwrap();
    let a = propagate_with_schedule(&o, &ev, &["X", "Z"]).unwrap();
    let b = propagate_with_schedule(&o, &ev, &["Z", "X"]).unwrap();
    assert_eq!(a, b);
    assert_eq!(a, propagate(&o, &ev).unwrap());

    let to_x = reorient_for_target(&net, "X", &default_reorient_options()).unwrap();
    assert_eq!(propagate_with_schedule(&to_x, &ev, &["Y", "Z"]), Err(Error::InvalidSchedule));
    assert_eq!(propagate_with_schedule(&to_x, &ev, &["Z"]), Err(Error::InvalidSchedule));
    assert_eq!(propagate_with_schedule(&to_x, &ev, &["Z", "Y", "X"]), Err(Error::InvalidSchedule));
}

#[test]
fn backward_evidence_on_the_forty_sixty_net() {
    let net = corpus::forty_sixty_net();
    let data = corpus::forty_sixty_mass();
    let ev = corpus::forty_sixty_evidence();
    let report = verify(&net, &ev, "X", &default_reorient_options(), Some(&data)).unwrap();

    let x = report.oracle.frame().clone();
    assert_eq!(report.oracle, MassFunction::categorical(x.clone(), x.full_set()).unwrap());
    assert_eq!(report.propagated, report.oracle);
    assert_eq!(report.outcome, Outcome::Equal);
    assert_eq!(report.baseline, single(&report.oracle, "X", &["x2"]));
    assert!(matches!(report.baseline_outcome, Outcome::Violation { .. }));
    assert_eq!(report.oriented.reversed_edges(), vec![("X", "Z")]);

    // Against the model's own joint the reoriented answer is strictly weaker.
    let own = verify(&net, &ev, "X", &default_reorient_options(), None).unwrap();
    assert_eq!(own.baseline_outcome, Outcome::Equal);
    assert!(matches!(own.outcome, Outcome::StrictlyCorrect { .. }));
}

#[test]
fn total_conflict_names_the_node() {
    let net = corpus::collider_net();
    let o = reorient_for_target(&net, "Z", &default_reorient_options()).unwrap();
    // AND graph: X = t, Y = t forces Z = t.
    let ev = EvidenceSet::new().with("X", &["t"]).unwrap().with("Y", &["t"]).unwrap().with("Z", &["f"]).unwrap();
    assert_eq!(propagate(&o, &ev), Err(Error::ConflictAtNode("Z".into())));
}

#[test]
fn compare_beliefs_outcomes() {
    let f = corpus::box_ambiguity_frame();
    let x = alloc::sync::Arc::new(f.subframe(&["X"]).unwrap());
    let vac = MassFunction::vacuous(x.clone());
    let x1 = MassFunction::categorical(x.clone(), FocalSet::from_mask(2, 0b01)).unwrap();
    assert_eq!(compare_beliefs(&vac, &vac).unwrap(), Outcome::Equal);
    assert!(matches!(compare_beliefs(&vac, &x1).unwrap(), Outcome::StrictlyCorrect { .. }));
    match compare_beliefs(&x1, &vac).unwrap() {
        Outcome::Violation { witness, belief, reference } => {
            assert_eq!(witness, FocalSet::from_mask(2, 0b01));
            assert_eq!((belief, reference), (ratio(1, 1), ratio(0, 1)));
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(compare_beliefs(&vac, &MassFunction::vacuous(f)), Err(Error::FrameMismatch));
}
