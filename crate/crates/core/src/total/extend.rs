//! Extending members of a bounded clone towards total functions.

use crate::error::{Error, Result};
use crate::galois::BoundedClone;
use crate::pmf::Pmf;
use crate::total::matching::{saturate_left, Matching};

fn require_member(c: &BoundedClone, f: &Pmf) -> Result<()> {
    if !c.member(f)? {
        return Err(Error::Precondition(format!("{f} is not a member of the clone")));
    }
    Ok(())
}

/// The first output `b` (by tuple code) with `f ∪ {(a, b)} ∈ C`.
pub fn extend_one_point(c: &BoundedClone, f: &Pmf, a: usize) -> Result<Option<usize>> {
    require_member(c, f)?;
    if a >= f.in_count() {
        return Err(Error::Range(format!("input code {a} outside B^{}", f.n())));
    }
    for b in 0..f.out_count() {
        if c.member(&f.with_pair(a, b)?)? {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Extends `f` greedily, one missing input at a time in code order.
pub fn total_extension(c: &BoundedClone, f: &Pmf) -> Result<Option<Pmf>> {
    require_member(c, f)?;
    let mut g = f.clone();
    for a in 0..f.in_count() {
        if g.image(a).next().is_some() {
            continue;
        }
        match extend_one_point(c, &g, a)? {
            Some(b) => g = g.with_pair(a, b)?,
            None => return Ok(None),
        }
    }
    Ok(Some(g))
}

/// A member `f` and input `a` with no one-point extension, if any, over all
/// densely indexed shapes of `c`.
pub fn one_point_counterexample(c: &BoundedClone) -> Result<Option<(Pmf, usize)>> {
    for fam in c.families() {
        if fam.count().is_none() {
            continue;
        }
        let s = fam.shape();
        for f in c.members(s.n, s.m)? {
            for a in 0..f.in_count() {
                if extend_one_point(c, &f, a)?.is_none() {
                    return Ok(Some((f, a)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    /// A function `g` with `f ∪ g ∈ C`.
    Found(Pmf),
    /// Inputs `X` whose possible images `N(X)`, taken over every maximal
    /// member containing `f`, are fewer than `X`.
    Hall { inputs: Vec<usize>, images: Vec<usize> },
    /// Every single maximal member containing `f` fails, although their
    /// union would admit a matching.
    Blocked,
    /// `|B^n| ≠ |B^m|`, so no bijection exists.
    SizeMismatch,
}

impl Extension {
    pub fn found(&self) -> Option<&Pmf> {
        match self {
            Extension::Found(g) => Some(g),
            _ => None,
        }
    }
}

fn adjacency(f: &Pmf, top: &Pmf) -> Vec<Vec<usize>> {
    (0..f.in_count()).map(|x| top.image(x).collect()).collect()
}

/// Searches an injective function `g` with `f ∪ g ∈ C`: first inside `f`,
/// then inside every maximal member `M ⊇ f` by matching, each candidate
/// verified by a membership query.
pub fn injective_extension(c: &BoundedClone, f: &Pmf) -> Result<Extension> {
    require_member(c, f)?;
    let fam = c.family(f.n(), f.m())?;
    let tops = fam
        .maximal()
        .ok_or_else(|| Error::Precondition(format!("maximal members of shape {} are unknown", f.shape())))?;
    let mut union = Pmf::empty(f.base(), f.n(), f.m())?;
    // an injection inside f itself needs no further membership
    if let Matching::Saturating(partner) = saturate_left(&adjacency(f, f), f.out_count()) {
        return Ok(Extension::Found(Pmf::from_fn(f.base(), f.n(), f.m(), |x| partner[x])?));
    }
    for top in tops.iter().filter(|t| f.is_subfunction_of(t)) {
        for (x, y) in top.pairs() {
            union.insert(x, y)?;
        }
        if let Matching::Saturating(partner) = saturate_left(&adjacency(f, top), f.out_count()) {
            let g = Pmf::from_fn(f.base(), f.n(), f.m(), |x| partner[x])?;
            let mut both = f.clone();
            for (x, y) in g.pairs() {
                both.insert(x, y)?;
            }
            if c.member(&both)? {
                return Ok(Extension::Found(g));
            }
        }
    }
    Ok(match saturate_left(&adjacency(f, &union), f.out_count()) {
        Matching::Hall { left, neighbours } => Extension::Hall {
            inputs: left,
            images: neighbours,
        },
        Matching::Saturating(_) => Extension::Blocked,
    })
}

/// As [`injective_extension`], for bijections.
pub fn bijective_extension(c: &BoundedClone, f: &Pmf) -> Result<Extension> {
    if f.in_count() != f.out_count() {
        require_member(c, f)?;
        return Ok(Extension::SizeMismatch);
    }
    injective_extension(c, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{BaseSet, Caps, DEFAULT_BUDGET};
    use crate::galois::pol_bounded;
    use crate::gates;
    use crate::order::OrderKind;
    use crate::pmf;
    use crate::weights::builtin;

    fn b2() -> BaseSet {
        BaseSet::boolean()
    }

    fn caps(n: usize, m: usize) -> Caps {
        Caps::new(n, m).unwrap()
    }

    fn pf(n: usize, m: usize, pairs: &[(usize, usize)]) -> Pmf {
        Pmf::from_pairs(b2(), n, m, pairs.iter().copied()).unwrap()
    }

    #[test]
    fn one_point_extensions() {
        let all = pol_bounded(b2(), caps(1, 1), &[], DEFAULT_BUDGET).unwrap();
        assert_eq!(extend_one_point(&all, &pf(1, 1, &[(1, 1)]), 0).unwrap(), Some(0));
        let nots = BoundedClone::closure(b2(), caps(1, 1), &[gates::not()]).unwrap();
        assert_eq!(extend_one_point(&nots, &pf(1, 1, &[(0, 1)]), 1).unwrap(), Some(0));
        let least = BoundedClone::closure(b2(), caps(1, 1), &[]).unwrap();
        assert_eq!(extend_one_point(&least, &pf(1, 1, &[(0, 0)]), 1).unwrap(), Some(1));
    }

    #[test]
    fn total_extensions() {
        let c = BoundedClone::closure(b2(), caps(2, 2), &[gates::cnot()]).unwrap();
        let g = total_extension(&c, &pf(2, 2, &[(0, 0)])).unwrap().unwrap();
        assert!(g.is_total() && c.member(&g).unwrap());
        let least = BoundedClone::closure(b2(), caps(1, 1), &[]).unwrap();
        assert!(total_extension(&least, &pf(1, 1, &[(0, 1)])).is_err());
        assert_eq!(total_extension(&c, &gates::cnot()).unwrap(), Some(gates::cnot()));
        assert!(one_point_counterexample(&c).unwrap().is_none());
    }

    #[test]
    fn injections_inside_full_relation() {
        let all = pol_bounded(b2(), caps(1, 1), &[], DEFAULT_BUDGET).unwrap();
        let f = pf(1, 1, &[(0, 0), (0, 1), (1, 1)]);
        assert_eq!(injective_extension(&all, &f).unwrap(), Extension::Found(pmf::identity(b2(), 1).unwrap()));
    }

    #[test]
    fn constant_functions_violate_hall() {
        let zero = pf(1, 1, &[(0, 0), (1, 0)]);
        let c = BoundedClone::closure(b2(), caps(1, 1), &[zero.clone()]).unwrap();
        assert_eq!(
            injective_extension(&c, &zero).unwrap(),
            Extension::Hall {
                inputs: vec![0, 1],
                images: vec![0]
            }
        );
    }

    #[test]
    fn bijections() {
        let c = BoundedClone::closure(b2(), caps(1, 1), &[gates::not()]).unwrap();
        assert_eq!(bijective_extension(&c, &pf(1, 1, &[(0, 1)])).unwrap(), Extension::Found(gates::not()));
        let d = pol_bounded(b2(), caps(1, 2), &[builtin::delta(b2(), OrderKind::Leq)], DEFAULT_BUDGET).unwrap();
        assert_eq!(bijective_extension(&d, &pf(1, 2, &[])).unwrap(), Extension::SizeMismatch);
    }
}
