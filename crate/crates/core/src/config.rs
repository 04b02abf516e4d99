//! Base set, arity caps and the run-wide limits shared by every engine.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_BASE: usize = 4;
pub const MAX_TOTAL_ARITY: usize = 12;
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// The finite base set `{0, .., size-1}`.
///
/// Sizes 0 and 1 are degenerate (several statements carry an "unless
/// |B| <= 1" proviso) and are only reachable through [`BaseSet::degenerate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BaseSet(usize);

impl BaseSet {
    pub fn new(size: usize) -> Result<Self> {
        if !(2..=MAX_BASE).contains(&size) {
            return Err(Error::Config(format!(
                "base size {size} outside 2..={MAX_BASE} (sizes 0 and 1 need the degenerate flag)"
            )));
        }
        Ok(BaseSet(size))
    }

    pub fn degenerate(size: usize) -> Result<Self> {
        if size > MAX_BASE {
            return Err(Error::Config(format!("base size {size} exceeds {MAX_BASE}")));
        }
        Ok(BaseSet(size))
    }

    /// The two-element base set used throughout the examples.
    pub const fn boolean() -> Self {
        BaseSet(2)
    }

    pub fn size(self) -> usize {
        self.0
    }

    /// `|B|^arity`, with `0^0 = 1`.
    pub fn tuples(self, arity: usize) -> usize {
        self.0.pow(arity as u32)
    }

    pub fn elements(self) -> std::ops::Range<usize> {
        0..self.0
    }
}

/// Arity caps `(n_max, m_max)` for bounded clone computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Caps {
    pub n_max: usize,
    pub m_max: usize,
}

impl Caps {
    pub fn new(n_max: usize, m_max: usize) -> Result<Self> {
        if n_max + m_max > MAX_TOTAL_ARITY {
            return Err(Error::Config(format!(
                "caps ({n_max},{m_max}) exceed total arity {MAX_TOTAL_ARITY}"
            )));
        }
        Ok(Caps { n_max, m_max })
    }

    pub fn fits(&self, n: usize, m: usize) -> bool {
        n <= self.n_max && m <= self.m_max
    }

    /// All shapes `(n, m)` within the caps, in lexicographic order.
    pub fn shapes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.n_max).flat_map(move |n| (0..=self.m_max).map(move |m| (n, m)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub base: BaseSet,
    pub caps: Caps,
    /// Largest weight arity the engines are asked to handle.
    pub k_max: usize,
    /// Largest finite pomonoid built by products, completions and quotients.
    pub monoid_cap: usize,
    /// Truncation threshold `T` of the saturating naturals.
    pub nat_threshold: usize,
    /// Cap on total enumeration steps of any single exhaustive scan.
    pub budget: u64,
}

impl Config {
    pub fn new(base: BaseSet, caps: Caps, k_max: usize) -> Result<Self> {
        let cfg = Config {
            base,
            caps,
            k_max,
            monoid_cap: 1024,
            nat_threshold: caps.n_max.max(caps.m_max).max(1) * k_max.max(1) + 1,
            budget: DEFAULT_BUDGET,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.caps.n_max + self.caps.m_max > MAX_TOTAL_ARITY {
            return Err(Error::Config("caps exceed total arity limit".into()));
        }
        let longest = self.caps.n_max.max(self.caps.m_max) * self.k_max.max(1);
        if self.nat_threshold <= longest {
            return Err(Error::Config(format!(
                "nat threshold {} must exceed the longest product length {longest}",
                self.nat_threshold
            )));
        }
        if self.monoid_cap == 0 {
            return Err(Error::Config("monoid cap must be positive".into()));
        }
        Ok(())
    }
}

impl Default for Config {
    fn default() -> Self {
        Config::new(BaseSet::boolean(), Caps { n_max: 2, m_max: 2 }, 4).expect("default config is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_sizes_need_the_flag() {
        assert!(BaseSet::new(0).is_err());
        assert!(BaseSet::new(1).is_err());
        assert!(BaseSet::new(5).is_err());
        assert_eq!(BaseSet::degenerate(0).unwrap().tuples(0), 1);
        assert_eq!(BaseSet::degenerate(0).unwrap().tuples(3), 0);
    }

    #[test]
    fn default_threshold_exceeds_products() {
        let cfg = Config::default();
        assert_eq!(cfg.nat_threshold, 9);
        let mut bad = cfg.clone();
        bad.nat_threshold = 8;
        assert!(bad.validate().is_err());
    }
}
