//! Evidential polytrees and one-directional propagation toward a target.
//!
//! Each variable is a node whose family (the node and its parents) carries a
//! valuation. To query a target, [`reorient_for_target`] points every edge at
//! it, recomputing the conditionals that change, and [`propagate`] passes
//! messages from the leaves to the target along the undirected backbone.
//! [`oracle_marginal`] conditions the full joint directly and is the
//! reference for [`verify`].

mod engine;
mod evidence;
mod network;
mod reorient;

pub use engine::{compare_beliefs, oracle_marginal, propagate, propagate_with_schedule, verify, Outcome, VerifyReport};
pub use evidence::{compose_evidence, EvidenceSet};
pub use network::{EvidentialPolytree, Violation};
pub use reorient::{
    default_reorient_options, reorient_for_target, TargetOrientedNetwork, FALLBACK_SEED, REORIENT_NODE_BUDGET,
};

#[cfg(test)]
mod tests;
