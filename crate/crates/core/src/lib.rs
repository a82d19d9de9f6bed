//! Composite shock + rarefaction waves for the isentropic p-system and
//! their viscous (Navier–Stokes, BD form) approximation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod composite;
pub mod entropy;
pub mod error;
pub mod gas;
pub mod harness;
pub mod rarefaction;
pub mod riemann;
pub mod shift;
pub mod shock;
pub mod solver;

pub use error::{ModelError, ModelResult, SolverError};
pub use gas::{GasParams, State};
