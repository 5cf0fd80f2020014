//! Conditionals of a joint mass function given a subset `p` of its variables.
//!
//! A conditional here is a mass function `c` on the full frame whose focals
//! all project onto the whole of `Ξ_p` (Cano type). Combining it with the
//! vacuous extension of the `p`-marginal gives an approximation of the joint;
//! the predicates measure how good that approximation is, the deciders ask
//! whether an exact one exists, and [`approximate_conditional`] builds one.

mod approx;
mod existence;
pub mod lp;
mod predicates;
mod residual;

pub use approx::{
    approximate_conditional, quality, ApproxOptions, ApproximationResult, ApproximationTrace, CoverRule, Iteration,
    Strategy,
};
pub use existence::{
    cano_conditional_exists, decomposition_exists, ExistenceCertificate, ExistenceMethod, Verdict, DEFAULT_FRAME_CAP,
};
pub use predicates::{
    conditional_independence, is_cano_type, is_marginally_consistent, marginally_correct, marginally_correct_joint,
};
pub use residual::{residual_table, ResidualTable};

use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::frame::JointFrame;
use crate::set::FocalSet;

/// A frame cut into the conditioning variables `p` and the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    frame: Arc<JointFrame>,
    given: Arc<JointFrame>,
    rest: Arc<JointFrame>,
    to_given: Vec<usize>,
    to_rest: Vec<usize>,
    /// `join[ξ * |rest| + η]` is the configuration with parts `ξ` and `η`.
    join: Vec<usize>,
}

impl Split {
    pub fn new<S: AsRef<str>>(frame: &Arc<JointFrame>, given: &[S]) -> Result<Self> {
        let given_frame = Arc::new(frame.subframe(given)?);
        let rest = Arc::new(frame.complement_frame(given)?);
        let to_given = frame.projection_map(&given_frame)?;
        let to_rest = frame.projection_map(&rest)?;
        let mut join = alloc::vec![0; frame.size()];
        for c in 0..frame.size() {
            join[to_given[c] * rest.size() + to_rest[c]] = c;
        }
        Ok(Self { frame: frame.clone(), given: given_frame, rest, to_given, to_rest, join })
    }

    pub fn frame(&self) -> &Arc<JointFrame> {
        &self.frame
    }

    pub fn given(&self) -> &Arc<JointFrame> {
        &self.given
    }

    pub fn rest(&self) -> &Arc<JointFrame> {
        &self.rest
    }

    pub fn given_names(&self) -> Vec<&str> {
        self.given.names().collect()
    }

    pub fn config(&self, given: usize, rest: usize) -> usize {
        self.join[given * self.rest.size() + rest]
    }

    /// `A_p × A_rest` as a set over the full frame.
    pub fn product(&self, given: &FocalSet, rest: &FocalSet) -> FocalSet {
        let mut out = self.frame.empty_set();
        for g in given.iter() {
            for r in rest.iter() {
                out.insert(self.config(g, r));
            }
        }
        out
    }

    /// `⋃_ξ {ξ} × a(ξ)` for a cover indexed by configurations of `p`.
    pub fn graph(&self, cover: &[FocalSet]) -> FocalSet {
        let mut out = self.frame.empty_set();
        for (g, a) in cover.iter().enumerate() {
            for r in a.iter() {
                out.insert(self.config(g, r));
            }
        }
        out
    }

    /// The rest-side section of `set` above the given configuration `ξ`.
    pub fn slice(&self, set: &FocalSet, given: usize) -> FocalSet {
        FocalSet::from_indices(self.rest.size(), (0..self.rest.size()).filter(|&r| set.contains(self.config(given, r))))
    }

    pub fn project_given(&self, set: &FocalSet) -> FocalSet {
        FocalSet::from_indices(self.given.size(), set.iter().map(|c| self.to_given[c]))
    }

    pub fn project_rest(&self, set: &FocalSet) -> FocalSet {
        FocalSet::from_indices(self.rest.size(), set.iter().map(|c| self.to_rest[c]))
    }

    /// Parts of a set of the form `A_p × A_rest`.
    pub fn factor(&self, set: &FocalSet) -> Result<(FocalSet, FocalSet)> {
        let g = self.project_given(set);
        let r = self.project_rest(set);
        if g.len() * r.len() != set.len() {
            return Err(Error::NonBoxFocal);
        }
        Ok((g, r))
    }
}
