//! Finite ordered algebra: pomonoids, posemirings, homomorphisms and
//! invariant preorders.

pub mod enumerate;
pub mod hom;
pub mod pomonoid;
pub mod preorder;
pub mod semiring;

pub use hom::MonoidHom;
pub use pomonoid::{OrderKind, Pomonoid};
pub use preorder::{Quasivariety, Relation, SiVerdict};
pub use semiring::Semiring;
