//! Exact computational engine for the finite Heisenberg groups H(p^n).
//!
//! The crate models the group of upper unitriangular 3x3 matrices over
//! Z/p^n with closed-formula arithmetic, and on top of that builds:
//!
//! * the reduction sequence H(p^n) -> H(p^(n-1)) and its kernel ([`seq`]),
//! * centralizers, pseudocentralizers and their slice decomposition,
//!   computed by exhaustive scan ([`cent`]),
//! * full subgroup lattice enumeration at desk scale ([`lattice`]),
//! * the valuation profile machinery: special generating sets, injective
//!   sets, witness pairs and representation decompositions ([`structure`]),
//! * Chermak-Delgado style measures, their pseudo variants, and complete
//!   measure reports ([`measure`]),
//! * an independent Cayley-table oracle used to cross-check everything on
//!   small instances ([`cayley`]),
//! * named invariant suites bundling all of the above into pass/fail checks
//!   ([`verify`]).
//!
//! All arithmetic is exact; no floating point appears anywhere.

pub mod cayley;
pub mod cent;
pub mod dot;
pub mod element;
pub mod error;
pub mod lattice;
pub mod measure;
pub mod params;
pub mod seq;
pub mod sets;
pub mod structure;
pub mod subgroup;
pub mod verify;

pub use element::Element;
pub use error::{Error, Result};
pub use params::{FactoredComponent, GroupParams};
pub use seq::{ExactSequence, OrderFactorization};
pub use sets::ElementSet;
pub use subgroup::{center_subgroup, Subgroup};
