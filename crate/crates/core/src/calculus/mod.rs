//! Toeplitz action on monomials, Bergman norms and truncated matrices.

mod action;
mod basis;
mod operator;

pub use action::{
    action_coefficient, commutator_coefficient, h_value, norm_sq, semicommutator_coefficient,
    ActionResult, ZERO_FLUSH,
};
pub use basis::{Basis, Truncation, MAX_BASIS_SIZE};
pub use operator::{
    build_commutator, build_operator, build_semicommutator, Entry, OperatorKind, Region,
    SparseOperator,
};
