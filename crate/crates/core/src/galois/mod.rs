//! The preservation Galois connection between pmfs and weights, at bounded
//! arities.

pub mod canonical;
pub mod clone;
pub mod index;
pub mod preserve;
pub mod restrict;

pub use canonical::{canonical_leq, canonical_leq_scan, member_via_invariants, WordPair};
pub use clone::{pol_bounded, pol_permutations, pol_total_functions, BoundedClone, Family};
pub use preserve::{preserves, preserves_all, preserves_par, Preservation, Witness};
pub use restrict::{restriction_report, unary_fragment_check, FragmentVerdict, RestrictionReport};
