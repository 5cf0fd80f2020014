//! Reference instances: small case tables and mass functions with known
//! answers, shared by tests, the CLI fixtures and the documentation.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::cases::{CaseRecord, CaseTable};
use crate::conditional::{approximate_conditional, ApproxOptions, Strategy};
use crate::frame::{JointFrame, ValueSet, Variable};
use crate::mass::MassFunction;
use crate::propagation::{EvidenceSet, EvidentialPolytree};
use crate::rational::ratio;
use crate::set::FocalSet;

fn frame(vars: &[(&str, &[&str])]) -> Arc<JointFrame> {
    let vars = vars.iter().map(|(n, vals)| Variable::new(*n, vals.iter().copied()).expect("corpus variable")).collect();
    Arc::new(JointFrame::new(vars).expect("corpus frame"))
}

fn record(frame: &JointFrame, cells: &[&[&str]], count: u64) -> CaseRecord {
    let values =
        frame.variables().iter().zip(cells).map(|(v, labels)| v.value_set(labels).expect("corpus labels")).collect();
    CaseRecord::new(values, count)
}

fn table(frame: Arc<JointFrame>, rows: &[(&[&[&str]], u64)]) -> CaseTable {
    let records = rows.iter().map(|(cells, n)| record(&frame, cells, *n)).collect();
    CaseTable::new(frame, records).expect("corpus table")
}

fn tuples(frame: &JointFrame, configs: &[&[&str]]) -> FocalSet {
    FocalSet::from_indices(frame.size(), configs.iter().map(|c| frame.config_of(c).expect("corpus tuple")))
}

/// One variable `X ∈ {x1, x2, x3}` observed through four set values with
/// frequencies 10, 20, 30 and 40.
pub fn y_table_cases() -> CaseTable {
    let f = frame(&[("X", &["x1", "x2", "x3"])]);
    table(f, &[(&[&["x1"]], 10), (&[&["x1", "x2"]], 20), (&[&["x2", "x3"]], 30), (&[&["x3"]], 40)])
}

pub fn y_table_mass() -> MassFunction {
    y_table_cases().bpa().expect("corpus bpa")
}

/// `X ∈ {x1, x2}`, `Z ∈ {z1, z2}`.
pub fn box_ambiguity_frame() -> Arc<JointFrame> {
    frame(&[("X", &["x1", "x2"]), ("Z", &["z1", "z2"])])
}

/// Three mass functions with identical marginals that disagree once
/// conditioned on `X = x1`: the full box, the diagonal and the anti-diagonal.
pub fn box_ambiguity_masses() -> [MassFunction; 3] {
    let f = box_ambiguity_frame();
    let categorical = |set: FocalSet| MassFunction::categorical(f.clone(), set).expect("corpus mass");
    [
        categorical(f.full_set()),
        categorical(tuples(&f, &[&["x1", "z1"], &["x2", "z2"]])),
        categorical(tuples(&f, &[&["x1", "z2"], &["x2", "z1"]])),
    ]
}

/// Three boolean variables whose data follow `X ∧ Y = Z`, partly observed.
pub fn bel_and_cases() -> CaseTable {
    let f = frame(&[("X", &["t", "f"]), ("Y", &["t", "f"]), ("Z", &["t", "f"])]);
    let tf: &[&str] = &["t", "f"];
    table(
        f,
        &[
            (&[&["t"], &["t"], &["t"]], 10),
            (&[&["t"], &["f"], &["f"]], 10),
            (&[&["f"], &["t"], &["f"]], 10),
            (&[&["f"], &["f"], &["f"]], 10),
            (&[&["t"], tf, tf], 10),
            (&[&["f"], tf, &["f"]], 10),
            (&[tf, &["t"], tf], 10),
            (&[tf, &["f"], &["f"]], 10),
            (&[tf, tf, tf], 20),
        ],
    )
}

pub fn bel_and_mass() -> MassFunction {
    bel_and_cases().bpa().expect("corpus bpa")
}

/// Mass one on the graph of logical AND over the frame of [`bel_and_mass`].
pub fn and_graph_conditional() -> MassFunction {
    let f = bel_and_mass().frame().clone();
    let graph = tuples(&f, &[&["t", "t", "t"], &["t", "f", "f"], &["f", "t", "f"], &["f", "f", "f"]]);
    MassFunction::categorical(f, graph).expect("corpus mass")
}

/// Two records over `X, Z`: `({x1}, {z1})` seen 40 times and
/// `({x1, x2}, {z2})` seen 60 times.
pub fn forty_sixty_cases() -> CaseTable {
    let f = box_ambiguity_frame();
    table(f, &[(&[&["x1"], &["z1"]], 40), (&[&["x1", "x2"], &["z2"]], 60)])
}

pub fn forty_sixty_mass() -> MassFunction {
    forty_sixty_cases().bpa().expect("corpus bpa")
}

/// Two overlapping records on which serial updating and intersecting the
/// per-condition selections give different answers.
pub fn serial_pitfall_cases() -> CaseTable {
    let f = frame(&[("X", &["x1", "x2", "x3"])]);
    table(f, &[(&[&["x1", "x2"]], 1), (&[&["x2", "x3"]], 1)])
}

pub fn serial_pitfall_conditions() -> Vec<(&'static str, ValueSet)> {
    vec![("X", ValueSet::from_bits(0b011)), ("X", ValueSet::from_bits(0b110))]
}

/// `X ∈ {x1, x2, x3}`, `Y ∈ {y1, y2}`.
pub fn backtracking_frame() -> Arc<JointFrame> {
    frame(&[("X", &["x1", "x2", "x3"]), ("Y", &["y1", "y2"])])
}

/// Marginal on `X`: mass 1/6 on each nonempty proper subset of `Ξ_X`.
pub fn backtracking_marginal() -> MassFunction {
    let f = backtracking_frame();
    let x = Arc::new(f.subframe(&["X"]).expect("corpus subframe"));
    let sets = [0b001, 0b010, 0b100, 0b011, 0b101, 0b110];
    MassFunction::new(x, sets.iter().map(|&m| (FocalSet::from_mask(3, m), ratio(1, 6)))).expect("corpus mass")
}

/// A Cano-type conditional of `Y` given `X` with three graph focals.
pub fn backtracking_conditional() -> MassFunction {
    let f = backtracking_frame();
    let graphs = [
        tuples(&f, &[&["x1", "y1"], &["x2", "y1"], &["x3", "y2"]]),
        tuples(&f, &[&["x1", "y1"], &["x2", "y2"], &["x3", "y2"]]),
        tuples(&f, &[&["x1", "y2"], &["x2", "y1"], &["x3", "y2"]]),
    ];
    MassFunction::new(f, graphs.into_iter().map(|g| (g, ratio(1, 3)))).expect("corpus mass")
}

/// Box hull of marginal ⊕ conditional. The greedy construction gets stuck on
/// it although a consistent conditional exists.
pub fn backtracking_mass() -> MassFunction {
    let f = backtracking_frame();
    let prior = backtracking_marginal().vacuous_extend(&f).expect("corpus extend");
    let (joint, _) = prior.combine(&backtracking_conditional()).expect("corpus combine");
    joint.box_hull()
}

/// `X → Z` learned from [`forty_sixty_mass`]: the `X` marginal and the
/// exhaustive approximate conditional of `Z` given `X`.
pub fn forty_sixty_net() -> EvidentialPolytree {
    let m = forty_sixty_mass();
    let cond = approximate_conditional(&m, &["X"], &ApproxOptions::new(Strategy::Exhaustive))
        .expect("corpus conditional")
        .conditional;
    let valuations = vec![("X", m.marginalize(&["X"]).expect("corpus marginal")), ("Z", cond)];
    EvidentialPolytree::new(m.frame().clone(), &[("X", "Z")], valuations).expect("corpus net")
}

/// Observation `Z = z2`, which queried toward `X` runs against the edge.
pub fn forty_sixty_evidence() -> EvidenceSet {
    EvidenceSet::new().with("Z", &["z2"]).expect("corpus evidence")
}

fn boolean_frame(names: &[&str]) -> Arc<JointFrame> {
    let vars = names.iter().map(|n| Variable::new(*n, ["t", "f"]).expect("corpus variable")).collect();
    Arc::new(JointFrame::new(vars).expect("corpus frame"))
}

/// Cano-type valuation of `child` given one boolean parent: the identity
/// graph with mass 2/3, the full family with 1/3.
fn copy_conditional(frame: &JointFrame, parent: &str, child: &str) -> MassFunction {
    let fam = Arc::new(frame.subframe(&[parent, child]).expect("corpus family"));
    let same = tuples(&fam, &[&["t", "t"], &["f", "f"]]);
    MassFunction::new(fam.clone(), [(same, ratio(2, 3)), (fam.full_set(), ratio(1, 3))]).expect("corpus mass")
}

fn boolean_root(frame: &JointFrame, name: &str) -> MassFunction {
    let x = Arc::new(frame.subframe(&[name]).expect("corpus subframe"));
    MassFunction::new(x, [(FocalSet::from_mask(2, 0b01), ratio(1, 2)), (FocalSet::full(2), ratio(1, 2))])
        .expect("corpus mass")
}

/// Boolean chain `X → Y → Z`.
pub fn chain_net() -> EvidentialPolytree {
    let f = boolean_frame(&["X", "Y", "Z"]);
    let valuations = vec![
        ("X", boolean_root(&f, "X")),
        ("Y", copy_conditional(&f, "X", "Y")),
        ("Z", copy_conditional(&f, "Y", "Z")),
    ];
    EvidentialPolytree::new(f, &[("X", "Y"), ("Y", "Z")], valuations).expect("corpus net")
}

/// `X → Z ← Y` with the `X` and `Y` marginals of [`bel_and_mass`] and the
/// AND graph as the valuation of `Z`.
pub fn collider_net() -> EvidentialPolytree {
    let m = bel_and_mass();
    let f = m.frame().clone();
    let valuations = vec![
        ("X", m.marginalize(&["X"]).expect("corpus marginal")),
        ("Y", m.marginalize(&["Y"]).expect("corpus marginal")),
        ("Z", and_graph_conditional()),
    ];
    EvidentialPolytree::new(f, &[("X", "Z"), ("Y", "Z")], valuations).expect("corpus net")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bel_and_table() {
        let m = bel_and_mass();
        assert_eq!(m.num_focals(), 9);
        let full = m.frame().full_set();
        assert_eq!(m.mass(&full), ratio(1, 5));
        assert!(m.focals().filter(|(s, _)| **s != full).all(|(_, v)| *v == ratio(1, 10)));
    }

    #[test]
    fn backtracking_instance() {
        let m = backtracking_mass();
        assert!(m.all_boxes());
        assert_eq!(m.marginalize(&["X"]).unwrap(), backtracking_marginal());
        let f = m.frame().clone();
        let x3y2 = f.box_of(&[("X", &["x3"][..]), ("Y", &["y2"][..])]).unwrap();
        assert_eq!(m.mass(&x3y2), ratio(1, 6));
        assert_eq!(forty_sixty_mass().num_focals(), 2);
        assert_eq!(forty_sixty_cases().total(), 100);
        assert_eq!(serial_pitfall_cases().total(), 2);
    }
}
