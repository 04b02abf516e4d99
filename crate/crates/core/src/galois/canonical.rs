//! The canonical word preorder `≲` of a clone.
//!
//! Words over the alphabet `B^k` stand for the values of the canonical weight
//! `w_k`; `a_0…a_{n-1} ≲ b_0…b_{m-1}` holds iff some member `g` of shape
//! `(n, m)` satisfies `g(a^j) ≈ b^j` for every row `j < k`. The canonical
//! weights are never built as monoids: this comparison is their only
//! interface.

use serde::{Deserialize, Serialize};

use crate::config::BaseSet;
use crate::error::{Error, Result};
use crate::galois::clone::BoundedClone;
use crate::pmf::Pmf;
use crate::tuple;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WordPair {
    pub k: usize,
    /// `n` letters, each a `k`-tuple.
    pub left: Vec<Vec<usize>>,
    /// `m` letters, each a `k`-tuple.
    pub right: Vec<Vec<usize>>,
}

impl WordPair {
    pub fn new(k: usize, left: Vec<Vec<usize>>, right: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(bad) = left.iter().chain(&right).find(|t| t.len() != k) {
            return Err(Error::Shape(format!("letter of length {} in a word over B^{k}", bad.len())));
        }
        Ok(WordPair { k, left, right })
    }

    /// The pair reading off the rows of `f`'s graph, one row per pair.
    pub fn of_pmf(f: &Pmf) -> Self {
        let b = f.base().size();
        let rows: Vec<(Vec<usize>, Vec<usize>)> = f
            .pairs()
            .map(|(x, y)| (tuple::decode(b, f.n(), x), tuple::decode(b, f.m(), y)))
            .collect();
        let k = rows.len();
        let left = (0..f.n()).map(|i| rows.iter().map(|r| r.0[i]).collect()).collect();
        let right = (0..f.m()).map(|i| rows.iter().map(|r| r.1[i]).collect()).collect();
        WordPair { k, left, right }
    }

    /// Row `j` of the word pair as `(a^j, b^j)` digit tuples.
    pub fn row(&self, j: usize) -> (Vec<usize>, Vec<usize>) {
        (
            self.left.iter().map(|t| t[j]).collect(),
            self.right.iter().map(|t| t[j]).collect(),
        )
    }

    /// The finite pmf `{(a^j, b^j) : j < k}`.
    pub fn to_pmf(&self, base: BaseSet) -> Result<Pmf> {
        let rows: Vec<_> = (0..self.k).map(|j| self.row(j)).collect();
        Pmf::from_tuples(
            base,
            self.left.len(),
            self.right.len(),
            rows.iter().map(|(a, b)| (a.as_slice(), b.as_slice())),
        )
    }
}

/// `left ≲ right`: membership of the pmf assembled from the rows, which is
/// enough because clones are closed under subfunctions.
pub fn canonical_leq(c: &BoundedClone, wp: &WordPair) -> Result<bool> {
    c.member(&wp.to_pmf(c.base())?)
}

/// `left ≲ right` decided literally: search the maximal members of the right
/// shape for one mapping every row as required.
pub fn canonical_leq_scan(c: &BoundedClone, wp: &WordPair) -> Result<bool> {
    let (n, m) = (wp.left.len(), wp.right.len());
    let fam = c.family(n, m)?;
    let b = c.base().size();
    let rows: Vec<(usize, usize)> = (0..wp.k)
        .map(|j| {
            let (a, bb) = wp.row(j);
            if a.iter().chain(&bb).any(|&d| d >= b) {
                return Err(Error::Range(format!("letter digit outside B in row {j}")));
            }
            Ok((tuple::encode(b, &a), tuple::encode(b, &bb)))
        })
        .collect::<Result<_>>()?;
    if let Some(tops) = fam.maximal() {
        return Ok(tops.iter().any(|g| rows.iter().all(|&(x, y)| g.contains(x, y))));
    }
    // only the excluded graphs are known: some member realizes the rows iff
    // the row set itself avoids them
    let width = c.base().tuples(m);
    let present: Vec<usize> = rows.iter().map(|&(x, y)| x * width + y).collect();
    match fam.excluded() {
        Some(ex) => Ok(!ex.iter().any(|s| s.iter().all(|p| present.contains(p)))),
        None => Err(Error::Precondition(format!("shape ({n},{m}) was skipped"))),
    }
}

/// Membership through the canonical invariants: `f ∈ C` iff the word pair
/// read off `f`'s graph satisfies `≲`. Must agree with
/// [`BoundedClone::member`] on closed clones.
pub fn member_via_invariants(c: &BoundedClone, f: &Pmf) -> Result<bool> {
    if f.base() != c.base() {
        return Err(Error::Shape("pmf over a different base".into()));
    }
    canonical_leq_scan(c, &WordPair::of_pmf(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Caps;
    use crate::gates;
    use crate::pmf;
    use proptest::prelude::*;

    fn b2() -> BaseSet {
        BaseSet::boolean()
    }

    fn caps() -> Caps {
        Caps::new(2, 2).unwrap()
    }

    #[test]
    fn reflexive() {
        let c = BoundedClone::closure(b2(), caps(), &[]).unwrap();
        let wp = WordPair::new(3, vec![vec![0, 1, 1], vec![1, 0, 1]], vec![vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert!(canonical_leq(&c, &wp).unwrap());
        assert!(canonical_leq_scan(&c, &wp).unwrap());
    }

    #[test]
    fn least_clone_does_not_flip_bits() {
        let c = BoundedClone::closure(b2(), caps(), &[]).unwrap();
        let wp = WordPair::new(1, vec![vec![0]], vec![vec![1]]).unwrap();
        assert!(!canonical_leq(&c, &wp).unwrap());
        assert!(!member_via_invariants(&c, &gates::not()).unwrap());
        assert_eq!(WordPair::of_pmf(&gates::not()).to_pmf(b2()).unwrap(), gates::not());
    }

    #[test]
    fn empty_pmf_needs_an_inhabited_shape() {
        let c = BoundedClone::closure(b2(), caps(), &[gates::cnot()]).unwrap();
        assert!(member_via_invariants(&c, &Pmf::empty(b2(), 2, 2).unwrap()).unwrap());
        assert!(!member_via_invariants(&c, &Pmf::empty(b2(), 0, 1).unwrap()).unwrap());
    }

    #[test]
    fn agrees_with_member_on_small_graphs() {
        let c = BoundedClone::closure(b2(), caps(), &[gates::cnot()]).unwrap();
        for f in pmf::all_of_shape(b2(), 2, 2).unwrap().filter(|f| f.len() <= 4) {
            assert_eq!(c.member(&f).unwrap(), member_via_invariants(&c, &f).unwrap(), "{f}");
        }
    }

    fn word(k: usize, len: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
        prop::collection::vec(prop::collection::vec(0usize..2, k), len)
    }

    proptest! {
        #[test]
        fn transitive(k in 1usize..4, u in word(3, 1), v in word(3, 2), w in word(3, 2)) {
            let cut = |x: &Vec<Vec<usize>>| x.iter().map(|t| t[..k].to_vec()).collect::<Vec<_>>();
            let (u, v, w) = (cut(&u), cut(&v), cut(&w));
            let c = BoundedClone::closure(b2(), caps(), &[gates::cnot(), gates::swap(), pmf::diagonal(b2(), 2).unwrap()]).unwrap();
            let uv = WordPair::new(k, u.clone(), v.clone()).unwrap();
            let vw = WordPair::new(k, v, w.clone()).unwrap();
            let uw = WordPair::new(k, u, w).unwrap();
            if canonical_leq(&c, &uv).unwrap() && canonical_leq(&c, &vw).unwrap() {
                prop_assert!(canonical_leq(&c, &uw).unwrap());
            }
        }
    }
}
