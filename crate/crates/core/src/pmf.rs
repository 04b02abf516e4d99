//! Partial multi-valued functions `B^n ⇸ B^m` stored as dense relations.
//!
//! The graph of a pmf is a bitset over `B^n × B^m`; the pair `(x, y)` lives at
//! bit `x * |B|^m + y`, with `x` and `y` big-endian tuple codes. Rows are
//! therefore contiguous, which is what composition and the dense clone
//! indices rely on.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::config::{BaseSet, MAX_TOTAL_ARITY};
use crate::error::{Error, Result};
use crate::tuple;

/// The numbers of inputs and outputs of a pmf.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub n: usize,
    pub m: usize,
}

impl Shape {
    pub fn new(n: usize, m: usize) -> Self {
        Shape { n, m }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pmf {
    base: BaseSet,
    n: usize,
    m: usize,
    graph: FixedBitSet,
}

impl Pmf {
    /// The empty pmf of the given shape.
    pub fn empty(base: BaseSet, n: usize, m: usize) -> Result<Self> {
        if n + m > MAX_TOTAL_ARITY {
            return Err(Error::Config(format!(
                "pmf shape ({n},{m}) exceeds total arity {MAX_TOTAL_ARITY}"
            )));
        }
        let bits = base.tuples(n) * base.tuples(m);
        Ok(Pmf {
            base,
            n,
            m,
            graph: FixedBitSet::with_capacity(bits),
        })
    }

    pub fn from_pairs<I>(base: BaseSet, n: usize, m: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut f = Pmf::empty(base, n, m)?;
        for (x, y) in pairs {
            f.insert(x, y)?;
        }
        Ok(f)
    }

    /// Builds a pmf from `(input digits, output digits)` pairs.
    pub fn from_tuples<'a, I>(base: BaseSet, n: usize, m: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [usize], &'a [usize])>,
    {
        let mut f = Pmf::empty(base, n, m)?;
        for (x, y) in pairs {
            if x.len() != n || y.len() != m {
                return Err(Error::Shape(format!(
                    "pair of lengths ({},{}) in a pmf of shape ({n},{m})",
                    x.len(),
                    y.len()
                )));
            }
            let x = tuple::TupleCode::encode(base, x)?.code;
            let y = tuple::TupleCode::encode(base, y)?.code;
            f.insert(x, y)?;
        }
        Ok(f)
    }

    /// The total function `x ↦ map(x)` on tuple codes.
    pub fn from_fn(base: BaseSet, n: usize, m: usize, map: impl Fn(usize) -> usize) -> Result<Self> {
        let mut f = Pmf::empty(base, n, m)?;
        for x in 0..base.tuples(n) {
            f.insert(x, map(x))?;
        }
        Ok(f)
    }

    /// Rebuilds a pmf from the low bits of `mask`; only valid when the pair
    /// space has at most 64 elements.
    pub fn from_mask(base: BaseSet, n: usize, m: usize, mask: u64) -> Result<Self> {
        let mut f = Pmf::empty(base, n, m)?;
        let bits = f.pair_count();
        if bits > 64 || (bits < 64 && mask >> bits != 0) {
            return Err(Error::Range(format!(
                "mask {mask:#x} does not fit a pair space of {bits} bits"
            )));
        }
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            f.graph.insert(i);
            rest &= rest - 1;
        }
        Ok(f)
    }

    /// The graph as a bitmask, when the pair space has at most 64 elements.
    pub fn mask(&self) -> Option<u64> {
        if self.pair_count() > 64 {
            return None;
        }
        Some(self.graph.ones().fold(0u64, |acc, i| acc | (1u64 << i)))
    }

    pub fn base(&self) -> BaseSet {
        self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.n, self.m)
    }

    pub fn in_count(&self) -> usize {
        self.base.tuples(self.n)
    }

    pub fn out_count(&self) -> usize {
        self.base.tuples(self.m)
    }

    /// Size of the ambient pair space `|B^n × B^m|`.
    pub fn pair_count(&self) -> usize {
        self.graph.len()
    }

    pub fn graph(&self) -> &FixedBitSet {
        &self.graph
    }

    /// Number of pairs in the graph.
    pub fn len(&self) -> usize {
        self.graph.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_clear()
    }

    pub fn pair_index(&self, x: usize, y: usize) -> usize {
        x * self.out_count() + y
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.in_count() && y < self.out_count() && self.graph.contains(self.pair_index(x, y))
    }

    pub fn insert(&mut self, x: usize, y: usize) -> Result<()> {
        if x >= self.in_count() || y >= self.out_count() {
            return Err(Error::Range(format!(
                "pair ({x},{y}) outside B^{} × B^{}",
                self.n, self.m
            )));
        }
        let i = self.pair_index(x, y);
        self.graph.insert(i);
        Ok(())
    }

    /// A copy with one more pair.
    pub fn with_pair(&self, x: usize, y: usize) -> Result<Self> {
        let mut g = self.clone();
        g.insert(x, y)?;
        Ok(g)
    }

    /// Pairs `(x, y)` in increasing pair-index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let out = self.out_count();
        self.graph.ones().map(move |i| (i / out, i % out))
    }

    /// Outputs related to input `x`.
    pub fn image(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let out = self.out_count();
        (0..out).filter(move |&y| self.graph.contains(x * out + y))
    }

    pub fn domain(&self) -> Vec<usize> {
        let mut dom: Vec<usize> = self.pairs().map(|(x, _)| x).collect();
        dom.dedup();
        dom
    }

    pub fn range(&self) -> Vec<usize> {
        let mut rng: Vec<usize> = self.pairs().map(|(_, y)| y).collect();
        rng.sort_unstable();
        rng.dedup();
        rng
    }

    pub fn is_subfunction_of(&self, g: &Pmf) -> bool {
        self.shape() == g.shape() && self.base == g.base && self.graph.is_subset(&g.graph)
    }

    /// `f^{-1}: B^m ⇸ B^n`, the transposed relation.
    pub fn inverse(&self) -> Pmf {
        let mut inv = Pmf::empty(self.base, self.m, self.n).expect("transposed shape is valid");
        for (x, y) in self.pairs() {
            let i = inv.pair_index(y, x);
            inv.graph.insert(i);
        }
        inv
    }

    pub fn is_total(&self) -> bool {
        (0..self.in_count()).all(|x| self.image(x).next().is_some())
    }

    pub fn is_univalued(&self) -> bool {
        (0..self.in_count()).all(|x| self.image(x).nth(1).is_none())
    }

    pub fn is_injective(&self) -> bool {
        self.inverse().is_univalued()
    }

    pub fn is_surjective(&self) -> bool {
        self.inverse().is_total()
    }

    pub fn is_permutation(&self) -> bool {
        self.n == self.m
            && self.is_total()
            && self.is_univalued()
            && self.is_injective()
            && self.is_surjective()
    }

    pub fn predicates(&self) -> Predicates {
        Predicates {
            total: self.is_total(),
            univalued: self.is_univalued(),
            injective: self.is_injective(),
            surjective: self.is_surjective(),
            permutation: self.is_permutation(),
        }
    }

    /// The value at `x` of a univalued pmf.
    pub fn apply(&self, x: usize) -> Option<usize> {
        self.image(x).next()
    }

    /// Digit-level rendering of the pairs, e.g. `["01->10", ...]`.
    pub fn render_pairs(&self) -> Vec<String> {
        let b = self.base.size();
        self.pairs()
            .map(|(x, y)| {
                format!(
                    "{}->{}",
                    tuple::render(b, self.n, x),
                    tuple::render(b, self.m, y)
                )
            })
            .collect()
    }

    /// Total order used for deterministic listings: by shape, then by the
    /// sequence of pair indices.
    pub fn listing_cmp(&self, other: &Pmf) -> Ordering {
        self.shape()
            .cmp(&other.shape())
            .then_with(|| self.graph.ones().cmp(other.graph.ones()))
    }
}

impl fmt::Debug for Pmf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Pmf{}{{{}}}",
            self.shape(),
            self.render_pairs().join(", ")
        )
    }
}

impl fmt::Display for Pmf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Predicates {
    pub total: bool,
    pub univalued: bool,
    pub injective: bool,
    pub surjective: bool,
    pub permutation: bool,
}

/// The identity `id_n`.
pub fn identity(base: BaseSet, n: usize) -> Result<Pmf> {
    Pmf::from_fn(base, n, n, |x| x)
}

/// Relational composition `g ∘ f`: `(g∘f)(x) ≈ z` iff `f(x) ≈ y` and `g(y) ≈ z`
/// for some `y`.
pub fn compose(g: &Pmf, f: &Pmf) -> Result<Pmf> {
    if f.m != g.n || f.base != g.base {
        return Err(Error::Shape(format!(
            "cannot compose {} after {}",
            g.shape(),
            f.shape()
        )));
    }
    let mut out = Pmf::empty(f.base, f.n, g.m)?;
    let width_g = g.out_count();
    if let (Some(fm), Some(gm), true) = (f.mask(), g.mask(), out.pair_count() <= 64) {
        let width_f = f.out_count();
        let row_mask = |w: usize| if w >= 64 { u64::MAX } else { (1u64 << w) - 1 };
        let mut mask = 0u64;
        for x in 0..f.in_count() {
            let mut row_f = (fm >> (x * width_f)) & row_mask(width_f);
            let mut row = 0u64;
            while row_f != 0 {
                let y = row_f.trailing_zeros() as usize;
                row |= (gm >> (y * width_g)) & row_mask(width_g);
                row_f &= row_f - 1;
            }
            mask |= row << (x * width_g);
        }
        return Pmf::from_mask(f.base, f.n, g.m, mask);
    }
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); g.in_count()];
    for (y, z) in g.pairs() {
        rows[y].push(z);
    }
    for (x, y) in f.pairs() {
        for &z in &rows[y] {
            out.graph.insert(x * width_g + z);
        }
    }
    Ok(out)
}

/// Parallel product `f × g`; the inputs of `f` occupy the leading coordinates.
pub fn product(f: &Pmf, g: &Pmf) -> Result<Pmf> {
    if f.base != g.base {
        return Err(Error::Shape("product of pmfs over different bases".into()));
    }
    let mut out = Pmf::empty(f.base, f.n + g.n, f.m + g.m)?;
    let (in_g, out_g) = (g.in_count(), g.out_count());
    for (x, y) in f.pairs() {
        for (x2, y2) in g.pairs() {
            out.insert(x * in_g + x2, y * out_g + y2)?;
        }
    }
    Ok(out)
}

/// The total function `x ↦ (x_{rho(0)}, .., x_{rho(r-1)})` from `B^n` to `B^r`.
///
/// Variable permutations, diagonals `Δ_m`, projections `π_{n,i}` and the
/// discarding map `B^n → B^0` are all of this form.
pub fn variable_map(base: BaseSet, n: usize, rho: &[usize]) -> Result<Pmf> {
    if let Some(&i) = rho.iter().find(|&&i| i >= n) {
        return Err(Error::Range(format!("variable index {i} not below arity {n}")));
    }
    let b = base.size();
    Pmf::from_fn(base, n, rho.len(), |x| {
        let digits = tuple::decode(b, n, x);
        let picked: Vec<usize> = rho.iter().map(|&i| digits[i]).collect();
        tuple::encode(b, &picked)
    })
}

/// The swap `(x, y) ↦ (y, x)` on `B^2`.
pub fn swap(base: BaseSet) -> Pmf {
    variable_map(base, 2, &[1, 0]).expect("swap is well formed")
}

/// `Δ_m(x) = (x, .., x)`.
pub fn diagonal(base: BaseSet, m: usize) -> Result<Pmf> {
    variable_map(base, 1, &vec![0; m])
}

/// `π_{n,i}(x_0, .., x_{n-1}) = x_i`.
pub fn projection(base: BaseSet, n: usize, i: usize) -> Result<Pmf> {
    variable_map(base, n, &[i])
}

/// The constant `B^0 → B^m` with value `c`.
pub fn constant(base: BaseSet, c: &[usize]) -> Result<Pmf> {
    let code = tuple::TupleCode::encode(base, c)?.code;
    Pmf::from_pairs(base, 0, c.len(), [(0, code)])
}

/// Every pmf of the given shape, enumerated by mask. Only for pair spaces
/// of at most 20 bits.
pub fn all_of_shape(base: BaseSet, n: usize, m: usize) -> Result<impl Iterator<Item = Pmf>> {
    let bits = base.tuples(n) * base.tuples(m);
    if bits > 20 {
        return Err(Error::Cap {
            what: format!("pmfs of shape ({n},{m})"),
            size: bits,
            cap: 20,
        });
    }
    Ok((0u64..(1u64 << bits)).map(move |mask| Pmf::from_mask(base, n, m, mask).expect("mask fits")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;

    fn b2() -> BaseSet {
        BaseSet::boolean()
    }

    #[test]
    fn identity_shapes() {
        let id0 = identity(b2(), 0).unwrap();
        assert_eq!(id0.pairs().collect::<Vec<_>>(), vec![(0, 0)]);
        let id1 = identity(b2(), 1).unwrap();
        assert_eq!(id1.pairs().collect::<Vec<_>>(), vec![(0, 0), (1, 1)]);
        assert_eq!(identity(BaseSet::new(3).unwrap(), 2).unwrap().len(), 9);
    }

    #[test]
    fn not_is_an_involution() {
        let not = gates::not();
        assert_eq!(compose(&not, &not).unwrap(), identity(b2(), 1).unwrap());
    }

    #[test]
    fn cnot_squared_is_identity() {
        // brute-force join over the four inputs
        let cnot = gates::cnot();
        let sq = compose(&cnot, &cnot).unwrap();
        for x in 0..4 {
            let ys: Vec<usize> = cnot.image(x).collect();
            let zs: Vec<usize> = ys.iter().flat_map(|&y| cnot.image(y).collect::<Vec<_>>()).collect();
            assert_eq!(zs, vec![x]);
            assert_eq!(sq.image(x).collect::<Vec<_>>(), vec![x]);
        }
        assert_eq!(sq, identity(b2(), 2).unwrap());
    }

    #[test]
    fn empty_absorbs_composition() {
        let empty = Pmf::empty(b2(), 1, 1).unwrap();
        let c = compose(&empty, &gates::not()).unwrap();
        assert!(c.is_empty());
        assert!(compose(&gates::not(), &gates::cnot()).is_err());
    }

    #[test]
    fn not_times_not() {
        let nn = product(&gates::not(), &gates::not()).unwrap();
        let expected = Pmf::from_pairs(b2(), 2, 2, [(0, 3), (1, 2), (2, 1), (3, 0)]).unwrap();
        assert_eq!(nn, expected);
        let id1 = identity(b2(), 1).unwrap();
        assert_eq!(product(&id1, &id1).unwrap(), identity(b2(), 2).unwrap());
    }

    #[test]
    fn inverse_cases() {
        assert_eq!(gates::cnot().inverse(), gates::cnot());
        assert_eq!(identity(b2(), 2).unwrap().inverse(), identity(b2(), 2).unwrap());
        let f = Pmf::from_pairs(b2(), 1, 0, [(0, 0)]).unwrap();
        let inv = f.inverse();
        assert_eq!(inv.shape(), Shape::new(0, 1));
        assert_eq!(inv.pairs().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn predicate_scans() {
        let p = gates::cnot().predicates();
        assert!(p.total && p.univalued && p.injective && p.surjective && p.permutation);
        // input 1 has no image; the two pairs have distinct outputs
        let f = Pmf::from_pairs(b2(), 1, 1, [(0, 0), (0, 1)]).unwrap();
        assert!(!f.is_total());
        assert!(!f.is_univalued());
        assert!(f.is_injective());
        let g = f.inverse();
        assert!(g.is_total() && g.is_univalued() && !g.is_injective());
        let e = Pmf::empty(b2(), 1, 1).unwrap();
        assert!(!e.is_total() && e.is_univalued() && e.is_injective());
    }

    #[test]
    fn structural_maps() {
        assert_eq!(
            swap(b2()),
            Pmf::from_pairs(b2(), 2, 2, [(0, 0), (1, 2), (2, 1), (3, 3)]).unwrap()
        );
        assert_eq!(
            diagonal(b2(), 2).unwrap(),
            Pmf::from_pairs(b2(), 1, 2, [(0, 0), (1, 3)]).unwrap()
        );
        assert_eq!(
            projection(b2(), 2, 0).unwrap(),
            Pmf::from_pairs(b2(), 2, 1, [(0, 0), (1, 0), (2, 1), (3, 1)]).unwrap()
        );
        assert!(projection(b2(), 2, 2).is_err());
        assert_eq!(constant(b2(), &[1]).unwrap().pairs().collect::<Vec<_>>(), vec![(0, 1)]);
        let discard = variable_map(b2(), 1, &[]).unwrap();
        assert_eq!(discard.shape(), Shape::new(1, 0));
        assert_eq!(discard.len(), 2);
    }

    #[test]
    fn mask_round_trip_and_generic_compose_agree() {
        let b3 = BaseSet::new(3).unwrap();
        let f = Pmf::from_pairs(b3, 1, 2, [(0, 4), (1, 0), (1, 8), (2, 3)]).unwrap();
        let g = Pmf::from_pairs(b3, 2, 2, [(4, 1), (0, 0), (8, 7), (3, 3), (3, 5)]).unwrap();
        // out space 3*9 = 27 bits, so the mask path applies; recompute generically
        let fast = compose(&g, &f).unwrap();
        let mut slow = Pmf::empty(b3, 1, 2).unwrap();
        for (x, y) in f.pairs() {
            for (y2, z) in g.pairs() {
                if y == y2 {
                    slow.insert(x, z).unwrap();
                }
            }
        }
        assert_eq!(fast, slow);
        assert_eq!(Pmf::from_mask(b3, 1, 2, f.mask().unwrap()).unwrap(), f);
    }
}
