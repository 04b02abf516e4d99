//! Totality conditions, matchings, permutation clones and ancillas.

pub mod ancilla;
pub mod extend;
pub mod matching;

pub use ancilla::{ancilla_partial, master_weight_check, MasterVerdict, PermutationClone};
pub use extend::{
    bijective_extension, extend_one_point, injective_extension, one_point_counterexample, total_extension, Extension,
};
