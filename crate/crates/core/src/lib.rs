//! Verification engine for the quantum Schwarzschild problem.
//!
//! The crate reproduces the closed-form dust solution of the coupled
//! Einstein / statistical-field system and cross-checks it against a generic
//! curvature pipeline driven by second-order Taylor jets:
//!
//! * [`jets`]: two-variable second-order jets in `(r, tau)`.
//! * [`profiles`]: the radial profile expression language for `F(r)`, `G(r)`.
//! * [`geometry`]: Christoffel / Ricci / Einstein tensors and the
//!   d'Alembertian for the synchronous spherically symmetric metric.
//! * [`dust`]: the solution family, its density and amplitude.
//! * [`quantum`]: phase, four-velocity, stress-energy, Hamilton-Jacobi
//!   residual and the Newtonian comparison spectrum.
//! * [`frw`]: the Robertson-Walker reduction and Hubble rates.
//! * [`gedanken`]: energy ledgers for the Atwood-machine and pair cycles.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dust;
pub mod error;
pub mod frw;
pub mod gedanken;
pub mod geometry;
pub mod jets;
pub mod profiles;
pub mod quantum;

pub use error::{Error, Result};
pub use jets::Jet2;
pub use profiles::Profile;
