//! Translative (Gerstewitz) functionals `φ_{A,k}(y) = inf{t ∈ ℝ : y ∈ A + t·k}`.
//!
//! - [`polyhedral`]: closed forms for `A = {y : Wy ≤ b}`.
//! - [`oracle`]: bisection and directional-closure tests for sets given by a
//!   membership predicate.
//! - [`props`]: sampled checkers for translativity, monotonicity, convexity
//!   and related properties of any extended-real functional.
//! - [`epigraph`]: the translative extension `(y, s) ↦ f(y) − s` of a function.

pub mod epigraph;
pub mod error;
pub mod extreal;
pub mod generate;
pub mod linalg;
pub mod oracle;
pub mod polyhedral;
pub mod props;

pub use error::{Error, Result};
pub use extreal::{inf_of, ExtReal};
pub use oracle::{SetOracle, TriState};
pub use polyhedral::{Direction, HalfspaceSystem};
