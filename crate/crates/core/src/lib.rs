//! Clones of partial multi-valued functions on a finite set and the
//! pomonoid-valued weights that cut them out.
//!
//! Everything is finite and explicit: pmfs are bitsets over `B^n × B^m`,
//! pomonoids are multiplication tables with a materialized order, and clone
//! computations are bounded by arity caps with a completeness flag.

pub mod config;
pub mod constructions;
pub mod error;
pub mod galois;
pub mod gates;
pub mod io;
pub mod order;
pub mod pmf;
pub mod total;
pub mod tuple;
pub mod weights;

pub use config::{BaseSet, Caps, Config};
pub use error::{Error, Result, Violation};
pub use pmf::{Pmf, Shape};
