//! A workbench for finite domain theory and combinatory PCF semantics.
//!
//! The crate has two halves that meet in the middle:
//!
//! - A full PCF toolchain: parsing and unification-based elaboration
//!   ([`pcf`]), the small-step operational semantics with decidable k-step
//!   closure ([`opsem`]), and a fuel-indexed reading of the Scott model
//!   with soundness/adequacy cross-checks ([`scott`]).
//! - A finite domain-theory kit: validated finite posets with brute-force
//!   way-below and compactness, products, exponentials and least fixed
//!   points ([`domain`]); abstract bases, rounded ideal completions and
//!   step-function bases ([`bases`]); the inductive dyadics ([`dyadics`]);
//!   and the tower of iterated self-exponentials with embedding-projection
//!   pairs ([`dinfty`]).
//!
//! [`wtree`] supplies generic multi-sorted well-founded trees with
//! decidable equality, used to cross-check the syntax equality of PCF.
//!
//! Everything is exact and enumerative: posets are small enough to scan,
//! fuel and step budgets replace limits, and every theorem-shaped claim is
//! re-checked by tests at desk scale.

pub mod bases;
pub mod dinfty;
pub mod domain;
pub mod dyadics;
pub mod opsem;
pub mod pcf;
pub mod scott;
pub mod wtree;
