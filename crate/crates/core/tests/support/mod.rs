#![allow(dead_code)]

// The oracles live in the verification crate, which depends on this one, so
// they are compiled in here by path.
#[path = "../../../verification/src/random_expr.rs"]
pub mod random_expr;
#[path = "../../../verification/src/shooting.rs"]
pub mod shooting;
