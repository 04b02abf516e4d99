//! Pomonoid homomorphisms (not necessarily onto).

use std::sync::Arc;

use crate::error::{Error, Result, Violation};
use crate::order::pomonoid::{self, Pomonoid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidHom {
    source: Arc<Pomonoid>,
    target: Arc<Pomonoid>,
    map: Vec<usize>,
}

impl MonoidHom {
    pub fn new(source: Arc<Pomonoid>, target: Arc<Pomonoid>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::Shape(format!(
                "map of length {} on a source of size {}",
                map.len(),
                source.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.size()) {
            return Err(Error::Range(format!("image {bad} outside the target")));
        }
        let h = MonoidHom { source, target, map };
        h.check()?;
        Ok(h)
    }

    fn check(&self) -> Result<(), Violation> {
        let (s, t, f) = (&self.source, &self.target, &self.map);
        if f[s.unit()] != t.unit() {
            return Err(Violation::new("unit preserved", vec![s.name(s.unit()).into()]));
        }
        for a in s.elements() {
            for b in s.elements() {
                if f[s.mul(a, b)] != t.mul(f[a], f[b]) {
                    return Err(Violation::new("multiplication preserved", vec![s.name(a).into(), s.name(b).into()]));
                }
                if s.leq(a, b) && !t.leq(f[a], f[b]) {
                    return Err(Violation::new("order preserved", vec![s.name(a).into(), s.name(b).into()]));
                }
            }
        }
        Ok(())
    }

    pub fn identity(m: Arc<Pomonoid>) -> Self {
        let map = m.elements().collect();
        MonoidHom {
            source: m.clone(),
            target: m,
            map,
        }
    }

    /// The unique map onto the trivial pomonoid.
    pub fn collapse(m: Arc<Pomonoid>) -> Self {
        let map = vec![0; m.size()];
        MonoidHom {
            source: m,
            target: Arc::new(pomonoid::trivial()),
            map,
        }
    }

    /// Reduction `ℤ/c → ℤ/d` for `d | c`.
    pub fn cyclic_reduction(c: usize, d: usize) -> Result<Self> {
        if d == 0 || c % d != 0 {
            return Err(Error::Precondition(format!("{d} does not divide {c}")));
        }
        MonoidHom::new(
            Arc::new(pomonoid::cyclic(c)?),
            Arc::new(pomonoid::cyclic(d)?),
            (0..c).map(|x| x % d).collect(),
        )
    }

    pub fn source(&self) -> &Arc<Pomonoid> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Pomonoid> {
        &self.target
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}
