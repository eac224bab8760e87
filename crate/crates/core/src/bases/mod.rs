//! Bases on finite posets and rounded ideal completions of abstract bases.

pub mod abstract_basis;
pub mod ideal;
pub mod step_fn;

pub use abstract_basis::{
    check_abstract_basis, parse_basis, BasisOps, BasisReport, DyadicBasis, FiniteBasis,
};
pub use ideal::{
    idl_finite, idl_way_below, is_ideal, principal_ideal, principal_way_below, IdlError, IdlPoset,
    IDL_CAP,
};
pub use step_fn::{
    check_compact_basis, decompose_into_step_functions, directify, join_of_step_functions,
    list_to_subset, step_function, CompactBasisReport, Directification, StepFnError,
};
