//! File formats and the command-line front end for [`casebelief_core`].
//!
//! Mass functions, networks and results travel as JSON; case tables come in
//! as CSV. [`cli`] wires both to the core operations.

pub mod cases_csv;
pub mod cli;
pub mod error;
pub mod json;

pub use casebelief_core as core;
pub use error::CliError;
