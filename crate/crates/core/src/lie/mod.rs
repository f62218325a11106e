//! Matrix model of `SL(n,R)` and its block-parabolic subgroups.

pub mod adjoint;
pub mod exp;
pub mod flag;
pub mod json;
pub mod matrix;

pub use adjoint::{adjoint, adjoint_element, structured_inverse};
pub use exp::{below_block_entries, exp_mobius_cleared, exp_nilpotent, exp_nilpotent_matrix, nilpotency_index};
pub use flag::FlagContext;
pub use json::MatrixJson;
pub use matrix::{LieElement, PolyMatrix};
