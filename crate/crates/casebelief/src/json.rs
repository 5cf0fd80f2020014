//! JSON documents for frames, mass functions, networks and results.
//!
//! Rationals are written as `"p/q"` strings next to a six-place decimal
//! that readers ignore. Focal elements come out in canonical order and a
//! set that is a box is written per variable, anything else as a list of
//! tuples, so equal inputs always give byte-identical output.

use std::sync::Arc;

use casebelief_core::conditional::{ApproxOptions, ApproximationResult, ExistenceCertificate, Split};
use casebelief_core::propagation::{EvidentialPolytree, Outcome, TargetOrientedNetwork, VerifyReport, Violation};
use casebelief_core::rational::{self, to_decimal_string, to_fraction_string};
use casebelief_core::{FocalSet, JointFrame, MassFunction, Rational, Variable};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

pub const DECIMAL_PLACES: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableDoc {
    pub name: String,
    pub values: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetDoc {
    /// One value list per variable; a variable left out means its whole
    /// domain.
    Box(IndexMap<String, Vec<String>>),
    /// Explicit configurations, one label per variable in frame order.
    Tuples(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FocalDoc {
    pub set: SetDoc,
    pub mass: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MassDoc {
    pub variables: Vec<VariableDoc>,
    pub focals: Vec<FocalDoc>,
}

/// Any document with a `variables` list; used to name a frame.
#[derive(Clone, Debug, Deserialize)]
pub struct FrameDoc {
    pub variables: Vec<VariableDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkDoc {
    pub variables: Vec<VariableDoc>,
    pub edges: Vec<(String, String)>,
    pub valuations: IndexMap<String, MassDoc>,
}

/// Mapping file for the random-set lift.
#[derive(Clone, Debug, Deserialize)]
pub struct MappingDoc {
    pub variables: Vec<VariableDoc>,
    pub mapping: IndexMap<String, SetDoc>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalDoc {
    pub value: String,
    pub decimal: String,
}

impl From<&Rational> for RationalDoc {
    fn from(v: &Rational) -> Self {
        RationalDoc { value: to_fraction_string(v), decimal: to_decimal_string(v, DECIMAL_PLACES) }
    }
}

pub fn parse_rational(text: &str, context: &str) -> Result<Rational, String> {
    rational::parse(text).ok_or_else(|| format!("{context}: `{text}` is not a rational like \"3/10\""))
}

pub fn frame_doc(frame: &JointFrame) -> Vec<VariableDoc> {
    frame.variables().iter().map(|v| VariableDoc { name: v.name().to_string(), values: v.values().to_vec() }).collect()
}

pub fn frame_from_doc(vars: &[VariableDoc]) -> Result<Arc<JointFrame>, String> {
    let variables = vars
        .iter()
        .map(|v| Variable::new(v.name.as_str(), v.values.iter().map(String::as_str)))
        .collect::<casebelief_core::Result<Vec<_>>>()
        .map_err(|e| format!("variables: {e}"))?;
    JointFrame::new(variables).map(Arc::new).map_err(|e| format!("variables: {e}"))
}

pub fn set_doc(frame: &JointFrame, set: &FocalSet) -> SetDoc {
    match frame.box_components(set) {
        Some(parts) if !set.is_empty() => SetDoc::Box(
            frame
                .variables()
                .iter()
                .zip(parts)
                .map(|(v, p)| (v.name().to_string(), v.labels(p).into_iter().map(String::from).collect()))
                .collect(),
        ),
        _ => {
            SetDoc::Tuples(set.iter().map(|c| frame.config_labels(c).into_iter().map(String::from).collect()).collect())
        }
    }
}

pub fn set_from_doc(frame: &JointFrame, doc: &SetDoc) -> Result<FocalSet, String> {
    match doc {
        SetDoc::Box(parts) => {
            for name in parts.keys() {
                frame.require(name).map_err(|e| e.to_string())?;
            }
            let mut components = Vec::with_capacity(frame.num_variables());
            for v in frame.variables() {
                let set = match parts.get(v.name()) {
                    Some(labels) => v.value_set(labels).map_err(|e| e.to_string())?,
                    None => casebelief_core::ValueSet::full(v.domain_size()),
                };
                components.push(set);
            }
            frame.box_set(&components).map_err(|e| e.to_string())
        }
        SetDoc::Tuples(tuples) => {
            let mut set = frame.empty_set();
            for t in tuples {
                set.insert(frame.config_of(t).map_err(|e| match e {
                    casebelief_core::Error::FrameMismatch => {
                        format!("tuple has {} labels, frame has {} variables", t.len(), frame.num_variables())
                    }
                    other => other.to_string(),
                })?);
            }
            Ok(set)
        }
    }
}

pub fn mass_doc(m: &MassFunction) -> MassDoc {
    let frame = m.frame();
    MassDoc {
        variables: frame_doc(frame),
        focals: m
            .focals()
            .map(|(s, v)| FocalDoc {
                set: set_doc(frame, s),
                mass: to_fraction_string(v),
                decimal: Some(to_decimal_string(v, DECIMAL_PLACES)),
            })
            .collect(),
    }
}

pub fn mass_from_doc(doc: &MassDoc) -> Result<MassFunction, String> {
    let frame = frame_from_doc(&doc.variables)?;
    let mut assignments = Vec::with_capacity(doc.focals.len());
    for (i, f) in doc.focals.iter().enumerate() {
        let set = set_from_doc(&frame, &f.set).map_err(|e| format!("focals[{i}].set: {e}"))?;
        if set.is_empty() {
            return Err(format!("focals[{i}].set: empty set"));
        }
        assignments.push((set, parse_rational(&f.mass, &format!("focals[{i}].mass"))?));
    }
    MassFunction::new(frame, assignments).map_err(|e| format!("focals: {e}"))
}

pub fn network_doc(net: &EvidentialPolytree) -> NetworkDoc {
    let frame = net.frame();
    NetworkDoc {
        variables: frame_doc(frame),
        edges: net.edges().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        valuations: frame.names().filter_map(|n| net.valuation(n).map(|m| (n.to_string(), mass_doc(m)))).collect(),
    }
}

/// Builds the network. A valuation may list its variables in any order; it
/// is re-expressed in the network's order when the domains agree.
pub fn network_from_doc(doc: &NetworkDoc) -> Result<EvidentialPolytree, String> {
    let frame = frame_from_doc(&doc.variables)?;
    let mut valuations = Vec::with_capacity(doc.valuations.len());
    for (node, m) in &doc.valuations {
        let m = mass_from_doc(m).map_err(|e| format!("valuations.{node}.{e}"))?;
        let m = if frame.contains_frame(m.frame()) {
            let names: Vec<&str> = m.frame().names().collect();
            let ordered = Arc::new(frame.subframe(&names).map_err(|e| e.to_string())?);
            if ordered == *m.frame() {
                m
            } else {
                m.vacuous_extend(&frame).and_then(|j| j.marginalize_to(&ordered)).map_err(|e| e.to_string())?
            }
        } else {
            m
        };
        valuations.push((node.as_str(), m));
    }
    let edges: Vec<(&str, &str)> = doc.edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    EvidentialPolytree::new(frame, &edges, valuations).map_err(|e| e.to_string())
}

#[derive(Serialize)]
pub struct CombineDoc {
    #[serde(flatten)]
    pub mass: MassDoc,
    pub conflict: RationalDoc,
}

#[derive(Serialize)]
pub struct SelectionDoc {
    /// Focal element of the conditioning marginal.
    pub row: SetDoc,
    /// Set of rest configurations chosen for that row.
    pub choice: SetDoc,
}

#[derive(Serialize)]
pub struct CoverDoc {
    pub given: Vec<String>,
    pub rest: SetDoc,
}

#[derive(Serialize)]
pub struct IterationDoc {
    pub g_min: RationalDoc,
    pub selection: Vec<SelectionDoc>,
    pub cover: Vec<CoverDoc>,
    pub focal: SetDoc,
    pub contribution: RationalDoc,
}

#[derive(Serialize)]
pub struct ApproxDoc {
    pub given: Vec<String>,
    pub strategy: &'static str,
    pub cover: &'static str,
    pub seed: Option<u64>,
    pub quality: RationalDoc,
    pub conditional: MassDoc,
    pub trace: Vec<IterationDoc>,
}

pub fn approx_doc(split: &Split, options: &ApproxOptions, result: &ApproximationResult) -> ApproxDoc {
    let (given, rest) = (split.given(), split.rest());
    let trace = result
        .trace
        .iterations
        .iter()
        .map(|it| IterationDoc {
            g_min: (&it.g_min).into(),
            selection: it
                .selection
                .iter()
                .map(|(row, r)| SelectionDoc { row: set_doc(given, row), choice: set_doc(rest, r) })
                .collect(),
            cover: it
                .cover
                .iter()
                .enumerate()
                .map(|(xi, a)| CoverDoc {
                    given: given.config_labels(xi).into_iter().map(String::from).collect(),
                    rest: set_doc(rest, a),
                })
                .collect(),
            focal: set_doc(split.frame(), &it.added_focal),
            contribution: (&it.q_contribution).into(),
        })
        .collect();
    ApproxDoc {
        given: split.given_names().into_iter().map(String::from).collect(),
        strategy: options.strategy.as_str(),
        cover: options.cover_rule().as_str(),
        seed: options.seed,
        quality: (&result.quality).into(),
        conditional: mass_doc(&result.conditional),
        trace,
    }
}

#[derive(Serialize)]
pub struct CertificateDoc {
    pub question: &'static str,
    pub given: Vec<String>,
    pub verdict: &'static str,
    pub method: &'static str,
    pub witness: Option<MassDoc>,
}

pub fn certificate_doc(question: &'static str, given: &[String], cert: &ExistenceCertificate) -> CertificateDoc {
    CertificateDoc {
        question,
        given: given.to_vec(),
        verdict: cert.verdict.as_str(),
        method: cert.method.as_str(),
        witness: cert.witness.as_ref().map(mass_doc),
    }
}

#[derive(Serialize)]
pub struct ViolationDoc {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Serialize)]
pub struct ValidationDoc {
    pub valid: bool,
    pub violations: Vec<ViolationDoc>,
}

pub fn validation_doc(violations: &[Violation]) -> ValidationDoc {
    ValidationDoc {
        valid: violations.is_empty(),
        violations: violations.iter().map(|v| ViolationDoc { kind: v.kind(), message: v.to_string() }).collect(),
    }
}

#[derive(Serialize)]
pub struct OrientedDoc {
    pub target: String,
    pub variables: Vec<VariableDoc>,
    pub edges: Vec<(String, String)>,
    pub backbone_edges: Vec<(String, String)>,
    pub reversed_edges: Vec<(String, String)>,
    pub added_edges: Vec<(String, String)>,
    pub valuations: IndexMap<String, MassDoc>,
    pub qualities: IndexMap<String, RationalDoc>,
    pub warnings: Vec<String>,
}

fn owned_edges(edges: Vec<(&str, &str)>) -> Vec<(String, String)> {
    edges.into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

pub fn oriented_doc(o: &TargetOrientedNetwork) -> OrientedDoc {
    let frame = o.frame();
    OrientedDoc {
        target: o.target().to_string(),
        variables: frame_doc(frame),
        edges: owned_edges(o.edges()),
        backbone_edges: owned_edges(o.backbone_edges()),
        reversed_edges: owned_edges(o.reversed_edges()),
        added_edges: owned_edges(o.added_edges()),
        valuations: frame.names().filter_map(|n| o.valuation(n).map(|m| (n.to_string(), mass_doc(m)))).collect(),
        qualities: o.qualities().into_iter().map(|(n, q)| (n.to_string(), q.into())).collect(),
        warnings: o.warnings().to_vec(),
    }
}

#[derive(Serialize)]
pub struct OutcomeDoc {
    pub outcome: &'static str,
    /// Subset of the target frame where the beliefs differ, if any.
    pub witness: Option<SetDoc>,
    pub belief: Option<RationalDoc>,
    pub reference: Option<RationalDoc>,
}

pub fn outcome_doc(frame: &JointFrame, outcome: &Outcome) -> OutcomeDoc {
    match outcome {
        Outcome::Equal => OutcomeDoc { outcome: outcome.as_str(), witness: None, belief: None, reference: None },
        Outcome::StrictlyCorrect { witness } => OutcomeDoc {
            outcome: outcome.as_str(),
            witness: Some(set_doc(frame, witness)),
            belief: None,
            reference: None,
        },
        Outcome::Violation { witness, belief, reference } => OutcomeDoc {
            outcome: outcome.as_str(),
            witness: Some(set_doc(frame, witness)),
            belief: Some(belief.into()),
            reference: Some(reference.into()),
        },
    }
}

#[derive(Serialize)]
pub struct VerifyDoc {
    pub target: String,
    pub oracle_source: &'static str,
    pub propagated: MassDoc,
    pub baseline: MassDoc,
    pub oracle: MassDoc,
    pub result: OutcomeDoc,
    pub baseline_result: OutcomeDoc,
    pub reversed_edges: Vec<(String, String)>,
    pub added_edges: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

pub fn verify_doc(report: &VerifyReport, with_reference: bool) -> VerifyDoc {
    let frame = report.oracle.frame();
    VerifyDoc {
        target: report.oriented.target().to_string(),
        oracle_source: if with_reference { "reference" } else { "network-joint" },
        propagated: mass_doc(&report.propagated),
        baseline: mass_doc(&report.baseline),
        oracle: mass_doc(&report.oracle),
        result: outcome_doc(frame, &report.outcome),
        baseline_result: outcome_doc(frame, &report.baseline_outcome),
        reversed_edges: owned_edges(report.oriented.reversed_edges()),
        added_edges: owned_edges(report.oriented.added_edges()),
        warnings: report.oriented.warnings().to_vec(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn render<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("documents serialize");
    out.push('\n');
    out
}
