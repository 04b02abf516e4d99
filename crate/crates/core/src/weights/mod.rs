//! Weights `w: B^k → M` and the named example corpus.

pub mod builtin;
pub mod weight;

pub use weight::{product_weight, Target, Weight};
