//! Exact Dempster-Shafer evidence kernel for set-valued case data.
//!
//! The crate is `no_std` (it needs `alloc`) and every operation is a pure
//! function over immutable values. Masses are exact rationals, focal sets are
//! dense bitsets over the canonical enumeration of a [`JointFrame`].
//!
//! Layout:
//!
//! - [`frame`] and [`set`]: variables, joint frames, focal sets, boxes.
//! - [`mass`]: mass functions with belief, plausibility, commonality,
//!   combination, conditioning, marginalization and vacuous extension.
//! - [`lattice`]: dense zeta and Möbius transforms over the subset lattice.
//! - [`cases`]: case tables and the select-and-update conditioning semantics.
//! - [`conditional`]: marginal consistency, conditional approximation and
//!   existence deciders.
//! - [`propagation`]: evidential polytrees, target reorientation and
//!   unidirectional message passing with an exact joint oracle.
//! - [`corpus`]: the bundled reference instances; [`sample`]: seeded
//!   random ones.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cases;
pub mod conditional;
pub mod corpus;
pub mod error;
pub mod frame;
pub mod lattice;
pub mod mass;
pub mod propagation;
pub mod rational;
pub mod sample;
pub mod set;

pub use cases::{CaseRecord, CaseTable};
pub use error::{Error, Result};
pub use frame::{JointFrame, ValueSet, Variable};
pub use mass::{Classification, MassFunction};
pub use rational::Rational;
pub use set::FocalSet;
