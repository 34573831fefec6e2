//! Finite permutation groups and the class of groups in which every
//! non-abelian subgroup is self-normalizing.
//!
//! Permutations act on `0..n` on the right and compose left to right:
//! `p.compose(&q)` applies `p` first. Conjugation is `x^g = g^{-1} x g`.
//! A [`Group`] stores all of its elements sorted, so element `0` is the
//! identity and subgroups are bitsets of element indices.

pub mod abelian;
pub mod arith;
pub mod decide;
pub mod error;
pub mod families;
pub mod field;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod structure;

pub use abelian::{AbelianPresentation, ModuleAction};
pub use decide::{
    cross_check, cross_check_report, decide_brute, decide_conjcount, decide_fast,
    yn_invariant_suite, Branch, Method, Reason, YnVerdict,
};
pub use error::{GroupError, PermError, Result};
pub use group::{Group, Limits, Subgroup};
pub use lattice::{all_subgroups, SubgroupLattice};
pub use perm::{parse_cycles, Perm};
