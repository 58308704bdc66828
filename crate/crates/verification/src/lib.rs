//! Independent oracles for the acceptance suite.
//!
//! Neither module uses the jets or the curvature pipeline to produce its
//! reference values: derivatives come from finite differences of plain `f64`
//! evaluations and the Newtonian ground state from direct integration.

pub mod random_expr;
pub mod shooting;
