//! Exact symbolic engine for distinguished curves on real flag manifolds
//! `SL(n,R)/P`.
//!
//! The crate decides whether a distinguished curve `t ↦ exp(tX) mod P`
//! (with `X` in the nilradical) admits projective reparameterisations or only
//! affine ones. It builds the polynomial criterion for the existence of
//! `r ∈ U`, `Y ∈ n` with `exp(-(t/(t+1))Y) r exp(tX) ∈ P` for all `t`, and
//! decides it with Gröbner bases over the rationals plus a rational witness
//! search. A second part checks the vector-field algebra on the line that
//! underlies the affine/projective dichotomy.

pub mod algebra;
pub mod checks;
pub mod classify;
pub mod criterion;
pub mod error;
pub mod lie;
pub mod lie1d;
pub mod report;
pub mod solver;
pub mod sweep;

pub use error::{Error, ParseError, Result};
