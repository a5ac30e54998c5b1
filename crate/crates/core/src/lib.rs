//! Computational toolkit for finite left quasigroups, racks and quandles.
//!
//! The crate represents finite left quasigroups as validated multiplication
//! tables and computes the structures their theory is built from: left
//! multiplication and displacement groups, congruence lattices with
//! commutator data, connectedness and superconnectedness, Mal'cev
//! classification of the generated variety, distributivity obstructions, and
//! exhaustive model search for identities in the two-operation term
//! language.
//!
//! Modules:
//! - [`algebra`]: tables, axiom predicates, subalgebras, quotients, products,
//!   isomorphism.
//! - [`term`]: the term language, parsing, evaluation, identity checks.
//! - [`perm`] / [`partition`]: permutation groups and partitions.
//! - [`action`]: multiplication and displacement groups, admissibility,
//!   Galois connections.
//! - [`congruence`]: congruence lattices, structural predicates,
//!   abelianness, commutators, distributivity obstructions.
//! - [`classify`]: connectedness, Mal'cev decisions, classification reports.
//! - [`construct`]: the named families.
//! - [`search`]: the finite model finder.
//! - [`lqt`]: the table file format.

#![forbid(unsafe_code)]

pub mod action;
pub mod algebra;
pub mod classify;
pub mod congruence;
pub mod construct;
pub mod lqt;
pub mod partition;
pub mod perm;
pub mod search;
pub mod term;

pub use algebra::{AlgebraError, LeftQuasigroup, PropertyFlags};
pub use classify::{ClassificationReport, MalcevDecision, Verdict};
pub use congruence::{Congruence, CongruenceLattice};
pub use partition::Partition;
pub use perm::{Perm, PermGroup};
pub use term::{Identity, Term};
