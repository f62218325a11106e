//! Lie algebras of vector fields on the line.

mod field;
mod parse;
pub mod quasi;
pub mod verify;

pub use field::{bracket, check_closure, classical_algebras, span_membership, span_rank, Counterexample, NamedAlgebra, VectorField1D};
pub use quasi::{Atom, QuasiPoly, Trig};
pub use verify::{
    flow_identities, nilpotency_checks, sample_lambdas, verify_closures, verify_coord_change, verify_coord_changes, verify_ode_solutions,
    ChangeClaim, ChangeKind, CoordChange,
};
