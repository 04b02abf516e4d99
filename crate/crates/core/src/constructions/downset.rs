//! The down-set completion of a finite pomonoid, a continuous ∨-semiring.

use crate::error::{Error, Result};
use crate::order::{Pomonoid, Semiring};

pub const MAX_DOWNSET_CARRIER: usize = 16;

fn down(m: &Pomonoid, set: u32) -> u32 {
    let mut out = 0u32;
    for y in m.elements() {
        if (0..m.size()).any(|x| set >> x & 1 == 1 && m.leq(y, x)) {
            out |= 1 << y;
        }
    }
    out
}

fn render(m: &Pomonoid, set: u32) -> String {
    if set == 0 {
        return "∅".into();
    }
    let names: Vec<&str> = m.elements().filter(|&x| set >> x & 1 == 1).map(|x| m.name(x)).collect();
    format!("{{{}}}", names.join(","))
}

/// `⟨down-sets of M, 1↓, ·, ∅, ∪, ⊆⟩` with `X·Y = {xy : x ∈ X, y ∈ Y}↓`,
/// together with the embedding `x ↦ x↓`. Down-sets are numbered by their
/// bitmask, so `∅` comes first.
pub fn downset_completion(m: &Pomonoid, cap: usize) -> Result<(Semiring, Vec<usize>)> {
    let n = m.size();
    if n > MAX_DOWNSET_CARRIER {
        return Err(Error::Cap {
            what: "carrier of a down-set completion".into(),
            size: n,
            cap: MAX_DOWNSET_CARRIER,
        });
    }
    let sets: Vec<u32> = (0..1u32 << n).filter(|&s| down(m, s) == s).collect();
    if sets.len() > cap {
        return Err(Error::Cap {
            what: "down-set completion".into(),
            size: sets.len(),
            cap,
        });
    }
    let index = |s: u32| sets.binary_search(&s).expect("down-set");
    let k = sets.len();
    let mut mul = Vec::with_capacity(k * k);
    let mut add = Vec::with_capacity(k * k);
    let mut leq = Vec::with_capacity(k * k);
    for &x in &sets {
        for &y in &sets {
            let mut prod = 0u32;
            for a in (0..n).filter(|a| x >> a & 1 == 1) {
                for b in (0..n).filter(|b| y >> b & 1 == 1) {
                    prod |= 1 << m.mul(a, b);
                }
            }
            mul.push(index(down(m, prod)));
            add.push(index(x | y));
            leq.push(x & !y == 0);
        }
    }
    let names = sets.iter().map(|&s| render(m, s)).collect();
    let unit = index(down(m, 1 << m.unit()));
    let mult = Pomonoid::new(names, unit, mul, leq)?;
    let s = Semiring::new(mult, index(0), add)?;
    let embedding = m.elements().map(|x| index(down(m, 1 << x))).collect();
    Ok((s, embedding))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::enumerate;
    use crate::order::pomonoid::{chain2, cyclic, trivial};

    #[test]
    fn small_completions() {
        let (s, e) = downset_completion(&trivial(), 1024).unwrap();
        assert_eq!(s.size(), 2);
        assert_eq!(e, vec![1]);
        let (s, _) = downset_completion(&chain2(), 1024).unwrap();
        assert_eq!(s.size(), 3);
        let (s, _) = downset_completion(&cyclic(2).unwrap(), 1024).unwrap();
        assert_eq!(s.size(), 4);
    }

    fn check(m: &Pomonoid) {
        let (s, e) = downset_completion(m, 1024).unwrap();
        let p = s.predicates();
        assert!(p.lor && p.continuous && p.positive, "{m:?}");
        let sm = s.mult();
        assert_eq!(e[m.unit()], sm.unit());
        for a in m.elements() {
            for b in m.elements() {
                assert_eq!(sm.mul(e[a], e[b]), e[m.mul(a, b)]);
                assert_eq!(sm.leq(e[a], e[b]), m.leq(a, b));
            }
        }
    }

    #[test]
    fn completions_are_continuous_join_semirings() {
        for n in 1..=3 {
            for m in enumerate::pomonoids(n) {
                check(&m);
            }
        }
    }
}
