use std::fmt;

use thiserror::Error;

/// A violated axiom together with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
}

impl Violation {
    pub fn new(axiom: impl Into<String>, witness: Vec<String>) -> Self {
        Violation {
            axiom: axiom.into(),
            witness,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.witness.is_empty() {
            write!(f, "{}", self.axiom)
        } else {
            write!(f, "{} (witness: {})", self.axiom, self.witness.join(", "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("axiom violated: {0}")]
    Axiom(Violation),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("enumeration budget exceeded: {needed} steps needed, budget is {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("size cap exceeded: {what} has {size} elements, cap is {cap}")]
    Cap {
        what: String,
        size: usize,
        cap: usize,
    },
    #[error("truncated naturals saturated at threshold {threshold}")]
    Saturation { threshold: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::Axiom(v)
    }
}
