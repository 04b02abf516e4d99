//! Auxiliary algebraic constructions: down-set completions, formal sums,
//! Grothendieck extensions and Grillet's subdirectly irreducible monoids.

pub mod downset;
pub mod formal;
pub mod grillet;
pub mod grothendieck;

pub use downset::downset_completion;
pub use formal::{FormalSum, FormalSums};
pub use grillet::{grillet_monoid, thm64_spotcheck, weak_irreducibility, FactorSet, Nilsemigroup, Spotcheck, WeakIrreducibility};
pub use grothendieck::grothendieck;
