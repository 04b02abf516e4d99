//! Arity-bounded pmf clones.
//!
//! A bounded clone is downward closed in every shape, so each shape is
//! stored by its maximal members, by the minimal pmfs it excludes, or both,
//! together with a dense membership bitmap whenever the pair space is small
//! enough. Subfunction closure is what Sierpiński closure amounts to over a
//! finite base: every family is finite, so directed unions add nothing.

use std::collections::{HashSet, VecDeque};

use itertools::Itertools;

use crate::config::{BaseSet, Caps};
use crate::error::{Error, Result, Violation};
use crate::galois::index::{DenseSet, DENSE_MAX_PAIRS};
use crate::galois::preserve::{self, Rows, Scanner, Step};
use crate::pmf::{self, Pmf, Shape};
use crate::weights::Weight;

/// The members of a bounded clone in one shape.
#[derive(Debug, Clone)]
pub struct Family {
    shape: Shape,
    pairs: usize,
    maximal: Option<Vec<Pmf>>,
    /// Minimal excluded graphs, as sorted pair indices.
    excluded: Option<Vec<Vec<usize>>>,
    dense: Option<DenseSet>,
    skipped: bool,
}

impl Family {
    fn from_maximal(base: BaseSet, shape: Shape, mut maximal: Vec<Pmf>) -> Self {
        let pairs = base.tuples(shape.n) * base.tuples(shape.m);
        maximal.sort_by(|a, b| a.listing_cmp(b));
        let dense = (pairs <= DENSE_MAX_PAIRS).then(|| {
            DenseSet::generated(pairs, maximal.iter().map(|f| f.mask().expect("small pair space")))
        });
        Family {
            shape,
            pairs,
            maximal: Some(maximal),
            excluded: None,
            dense,
            skipped: false,
        }
    }

    fn from_excluded(base: BaseSet, shape: Shape, excluded: Vec<Vec<usize>>) -> Result<Self> {
        let pairs = base.tuples(shape.n) * base.tuples(shape.m);
        let mut fam = Family {
            shape,
            pairs,
            maximal: None,
            excluded: None,
            dense: None,
            skipped: false,
        };
        if pairs <= DENSE_MAX_PAIRS {
            let set = DenseSet::avoiding(
                pairs,
                excluded.iter().map(|s| s.iter().fold(0u64, |acc, &p| acc | 1 << p)),
            );
            let maximal = set
                .maximal()
                .into_iter()
                .map(|mask| Pmf::from_mask(base, shape.n, shape.m, mask))
                .collect::<Result<Vec<_>>>()?;
            fam.maximal = Some(maximal);
            fam.dense = Some(set);
        }
        fam.excluded = Some(excluded);
        Ok(fam)
    }

    fn skipped(base: BaseSet, shape: Shape) -> Self {
        Family {
            shape,
            pairs: base.tuples(shape.n) * base.tuples(shape.m),
            maximal: None,
            excluded: None,
            dense: None,
            skipped: true,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Maximal members, when known.
    pub fn maximal(&self) -> Option<&[Pmf]> {
        self.maximal.as_deref()
    }

    pub fn excluded(&self) -> Option<&[Vec<usize>]> {
        self.excluded.as_deref()
    }

    pub fn is_skipped(&self) -> bool {
        self.skipped
    }

    pub fn count(&self) -> Option<usize> {
        self.dense.as_ref().map(DenseSet::count)
    }

    pub fn is_inhabited(&self) -> Option<bool> {
        if let Some(ms) = &self.maximal {
            return Some(!ms.is_empty());
        }
        self.excluded.as_ref().map(|ex| ex.iter().all(|s| !s.is_empty()))
    }

    fn contains(&self, f: &Pmf) -> Result<bool> {
        if let (Some(d), Some(mask)) = (&self.dense, f.mask()) {
            return Ok(d.contains(mask));
        }
        if let Some(ex) = &self.excluded {
            return Ok(!ex.iter().any(|s| s.iter().all(|&p| f.graph().contains(p))));
        }
        if let Some(ms) = &self.maximal {
            return Ok(ms.iter().any(|g| f.is_subfunction_of(g)));
        }
        Err(Error::Precondition(format!(
            "shape {} was skipped: its scan exceeded the budget",
            self.shape
        )))
    }
}

#[derive(Debug, Clone)]
pub struct BoundedClone {
    base: BaseSet,
    caps: Caps,
    generators: Vec<Pmf>,
    families: Vec<Family>,
    complete: bool,
}

fn check_generators(base: BaseSet, caps: &Caps, gens: &[Pmf]) -> Result<()> {
    for g in gens {
        if g.base() != base {
            return Err(Error::Shape("generator over a different base".into()));
        }
        if !caps.fits(g.n(), g.m()) {
            return Err(Error::Shape(format!(
                "generator of shape {} outside caps ({},{})",
                g.shape(),
                caps.n_max,
                caps.m_max
            )));
        }
    }
    Ok(())
}

impl BoundedClone {
    fn slot(&self, n: usize, m: usize) -> usize {
        n * (self.caps.m_max + 1) + m
    }

    pub fn base(&self) -> BaseSet {
        self.base
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn generators(&self) -> &[Pmf] {
        &self.generators
    }

    /// False when some product was dropped for exceeding the caps or some
    /// shape was skipped, so the result may miss members of the unbounded
    /// clone.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn family(&self, n: usize, m: usize) -> Result<&Family> {
        if !self.caps.fits(n, m) {
            return Err(Error::Shape(format!(
                "shape ({n},{m}) outside caps ({},{})",
                self.caps.n_max, self.caps.m_max
            )));
        }
        Ok(&self.families[self.slot(n, m)])
    }

    pub fn member(&self, f: &Pmf) -> Result<bool> {
        if f.base() != self.base {
            return Err(Error::Shape("pmf over a different base".into()));
        }
        self.family(f.n(), f.m())?.contains(f)
    }

    /// Membership of the pmf of shape `(n, m)` whose graph is `mask`.
    pub fn member_mask(&self, n: usize, m: usize, mask: u64) -> Result<bool> {
        let fam = self.family(n, m)?;
        match &fam.dense {
            Some(d) if mask >> fam.pairs == 0 => Ok(d.contains(mask)),
            _ => fam.contains(&Pmf::from_mask(self.base, n, m, mask)?),
        }
    }

    /// Every member of the given shape, ordered by graph mask. Only for
    /// shapes with a dense index.
    pub fn members(&self, n: usize, m: usize) -> Result<Vec<Pmf>> {
        let fam = self.family(n, m)?;
        let d = fam.dense.as_ref().ok_or_else(|| Error::Cap {
            what: format!("pair space of shape ({n},{m})"),
            size: fam.pairs,
            cap: DENSE_MAX_PAIRS,
        })?;
        d.iter().map(|mask| Pmf::from_mask(self.base, n, m, mask)).collect()
    }

    /// All maximal members across shapes, where known.
    pub fn all_maximal(&self) -> impl Iterator<Item = &Pmf> {
        self.families.iter().flat_map(|f| f.maximal().unwrap_or(&[]).iter())
    }

    /// Shapes `(n, m)` with at least one member.
    pub fn inhabited_shapes(&self) -> Vec<Shape> {
        self.families
            .iter()
            .filter(|f| f.is_inhabited() == Some(true))
            .map(|f| f.shape)
            .collect()
    }

    /// Inclusion, decided from the maximal members of `self`.
    pub fn is_subset_of(&self, other: &BoundedClone) -> Result<bool> {
        for fam in &self.families {
            if !other.caps.fits(fam.shape.n, fam.shape.m) {
                return Ok(false);
            }
            let Some(ms) = fam.maximal() else {
                return Err(Error::Precondition(format!(
                    "maximal members of shape {} are unknown",
                    fam.shape
                )));
            };
            for g in ms {
                if !other.member(g)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn same_members(&self, other: &BoundedClone) -> Result<bool> {
        Ok(self.caps == other.caps && self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// Checks closure under identities, composition, products within the
    /// caps and subfunctions, over the shapes whose maximal members are
    /// known. Operations are monotone, so maximal members suffice.
    pub fn verify_closed(&self) -> Result<(), Violation> {
        // skipped shapes cannot be checked
        let lookup = |f: &Pmf| self.member(f).unwrap_or(true);
        for n in 0..=self.caps.n_max.min(self.caps.m_max) {
            let id = pmf::identity(self.base, n).expect("identity within caps");
            if !lookup(&id) {
                return Err(Violation::new("identities", vec![format!("id_{n}")]));
            }
        }
        for fam in &self.families {
            if let Some(d) = &fam.dense {
                if !d.is_down_closed() {
                    return Err(Violation::new("subfunctions", vec![fam.shape.to_string()]));
                }
            }
        }
        let tops: Vec<&Pmf> = self.all_maximal().collect();
        for f in &tops {
            for g in &tops {
                if f.m() == g.n() {
                    let h = pmf::compose(g, f).expect("shapes match");
                    if !lookup(&h) {
                        return Err(Violation::new("composition", vec![f.to_string(), g.to_string()]));
                    }
                }
                if self.caps.fits(f.n() + g.n(), f.m() + g.m()) {
                    let h = pmf::product(f, g).expect("within caps");
                    if !lookup(&h) {
                        return Err(Violation::new("product", vec![f.to_string(), g.to_string()]));
                    }
                }
            }
        }
        Ok(())
    }

    /// The least bounded clone containing `generators`: the identities,
    /// closed under composition, products that fit the caps, and
    /// subfunctions.
    pub fn closure(base: BaseSet, caps: Caps, generators: &[Pmf]) -> Result<BoundedClone> {
        check_generators(base, &caps, generators)?;
        let width = caps.m_max + 1;
        let slot = |f: &Pmf| f.n() * width + f.m();
        let mut tops: Vec<Vec<Pmf>> = vec![Vec::new(); (caps.n_max + 1) * width];
        let mut queue = VecDeque::new();
        let mut complete = true;

        let offer = |h: Pmf, tops: &mut Vec<Vec<Pmf>>, queue: &mut VecDeque<Pmf>| {
            let s = &mut tops[slot(&h)];
            if s.iter().any(|g| h.is_subfunction_of(g)) {
                return;
            }
            s.retain(|g| !g.is_subfunction_of(&h));
            s.push(h.clone());
            queue.push_back(h);
        };

        for n in 0..=caps.n_max.min(caps.m_max) {
            offer(pmf::identity(base, n)?, &mut tops, &mut queue);
        }
        for g in generators {
            offer(g.clone(), &mut tops, &mut queue);
        }
        while let Some(h) = queue.pop_front() {
            if !tops[slot(&h)].contains(&h) {
                continue;
            }
            let current: Vec<Pmf> = tops.iter().flatten().cloned().collect();
            for g in &current {
                if g.m() == h.n() {
                    offer(pmf::compose(&h, g)?, &mut tops, &mut queue);
                }
                if h.m() == g.n() {
                    offer(pmf::compose(g, &h)?, &mut tops, &mut queue);
                }
                if caps.fits(h.n() + g.n(), h.m() + g.m()) {
                    offer(pmf::product(&h, g)?, &mut tops, &mut queue);
                    offer(pmf::product(g, &h)?, &mut tops, &mut queue);
                } else {
                    complete = false;
                }
            }
        }

        let families = caps
            .shapes()
            .map(|(n, m)| Family::from_maximal(base, Shape::new(n, m), std::mem::take(&mut tops[n * width + m])))
            .collect();
        Ok(BoundedClone {
            base,
            caps,
            generators: generators.to_vec(),
            families,
            complete,
        })
    }
}

/// Minimal sets of graph pairs of shape `(n, m)` whose presence refutes
/// `f ▷ w`: the distinct rows of each refuting matrix over the full
/// relation.
fn excluded_sets(base: BaseSet, n: usize, m: usize, w: &Weight, budget: u64) -> Result<Vec<Vec<usize>>> {
    let full = Pmf::from_pairs(
        base,
        n,
        m,
        (0..base.tuples(n)).flat_map(|x| (0..base.tuples(m)).map(move |y| (x, y))),
    )?;
    preserve::check_budget(full.len(), w.arity(), budget)?;
    let rows = Rows::new(base.size(), n, m, full.pairs().collect());
    let scanner = Scanner::new(w, &rows, n, m);
    let mut bad: HashSet<Vec<usize>> = HashSet::new();
    scanner.scan(&[], &mut |chosen, ok, _, _| {
        if !ok {
            let mut s: Vec<usize> = chosen.iter().map(|&p| rows.pairs[p].0 * base.tuples(m) + rows.pairs[p].1).collect();
            s.sort_unstable();
            s.dedup();
            bad.insert(s);
        }
        Step::Continue
    })?;
    Ok(bad.into_iter().collect())
}

fn minimalize(mut sets: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        let covered = kept.iter().any(|k| k.iter().all(|p| s.binary_search(p).is_ok()));
        if !covered {
            kept.push(s);
        }
    }
    kept
}

/// `pol(D)` within the caps. Shapes whose scan would exceed `budget` are
/// skipped and make the result incomplete.
pub fn pol_bounded(base: BaseSet, caps: Caps, ws: &[Weight], budget: u64) -> Result<BoundedClone> {
    if let Some(w) = ws.iter().find(|w| w.base() != base) {
        return Err(Error::Shape(format!("weight over base {} in a pol over base {}", w.base().size(), base.size())));
    }
    let mut families = Vec::new();
    let mut complete = true;
    for (n, m) in caps.shapes() {
        let shape = Shape::new(n, m);
        let mut all = Vec::new();
        let mut skipped = false;
        for w in ws {
            match excluded_sets(base, n, m, w, budget) {
                Ok(sets) => all.extend(sets),
                Err(Error::Budget { .. }) => {
                    skipped = true;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if skipped {
            complete = false;
            families.push(Family::skipped(base, shape));
        } else {
            families.push(Family::from_excluded(base, shape, minimalize(all))?);
        }
    }
    let c = BoundedClone {
        base,
        caps,
        generators: Vec::new(),
        families,
        complete,
    };
    c.verify_closed().map_err(Error::Axiom)?;
    Ok(c)
}

/// The permutations of `B^n` preserving every weight of `ws`.
pub fn pol_permutations(base: BaseSet, n: usize, ws: &[Weight], budget: u64) -> Result<Vec<Pmf>> {
    let size = base.tuples(n);
    if size > 8 {
        return Err(Error::Cap {
            what: format!("permutations of B^{n}"),
            size,
            cap: 8,
        });
    }
    let mut out = Vec::new();
    for perm in (0..size).permutations(size) {
        let f = Pmf::from_fn(base, n, n, |x| perm[x])?;
        if preserve::preserves_all(&f, ws, budget)? {
            out.push(f);
        }
    }
    Ok(out)
}

/// The total functions `B^n → B^m` preserving every weight of `ws`.
pub fn pol_total_functions(base: BaseSet, n: usize, m: usize, ws: &[Weight], budget: u64) -> Result<Vec<Pmf>> {
    let (ins, outs) = (base.tuples(n), base.tuples(m));
    let count = (outs as u128).checked_pow(ins as u32).unwrap_or(u128::MAX);
    if count > 1 << 20 {
        return Err(Error::Cap {
            what: format!("total functions B^{n} -> B^{m}"),
            size: usize::try_from(count).unwrap_or(usize::MAX),
            cap: 1 << 20,
        });
    }
    let mut out = Vec::new();
    for table in (0..ins).map(|_| 0..outs).multi_cartesian_product() {
        let f = Pmf::from_fn(base, n, m, |x| table[x])?;
        if preserve::preserves_all(&f, ws, budget)? {
            out.push(f);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DEFAULT_BUDGET;
    use crate::gates;
    use crate::order::OrderKind;
    use crate::weights::builtin;

    fn b2() -> BaseSet {
        BaseSet::boolean()
    }

    fn caps(n: usize, m: usize) -> Caps {
        Caps::new(n, m).unwrap()
    }

    fn total(c: &BoundedClone) -> usize {
        c.families().iter().map(|f| f.count().unwrap()).sum()
    }

    #[test]
    fn least_clone_is_subidentities() {
        let c = BoundedClone::closure(b2(), caps(1, 1), &[]).unwrap();
        // (0,0): ∅ and id_0; (1,1): the four subsets of id_1
        assert_eq!(total(&c), 6);
        let c = BoundedClone::closure(b2(), caps(2, 2), &[]).unwrap();
        for f in c.members(2, 2).unwrap() {
            assert!(f.is_subfunction_of(&pmf::identity(b2(), 2).unwrap()));
        }
        assert_eq!(c.members(2, 2).unwrap().len(), 16);
        assert!(!c.member(&gates::not()).unwrap());
        assert!(c.family(0, 1).unwrap().is_inhabited() == Some(false));
        c.verify_closed().unwrap();
    }

    #[test]
    fn generators_are_members() {
        let c = BoundedClone::closure(b2(), caps(2, 2), &[gates::cnot()]).unwrap();
        assert!(c.member(&gates::cnot()).unwrap());
        assert!(c.member(&pmf::identity(b2(), 1).unwrap()).unwrap());
        assert!(!c.member(&gates::swap()).unwrap());
        c.verify_closed().unwrap();
        assert!(BoundedClone::closure(b2(), caps(1, 1), &[gates::cnot()]).is_err());
    }

    #[test]
    fn not_clone_matches_explicit_enumeration() {
        let c = BoundedClone::closure(b2(), caps(2, 2), &[gates::not()]).unwrap();
        let not = gates::not();
        let id1 = pmf::identity(b2(), 1).unwrap();
        let tops: Vec<Pmf> = [&id1, &not]
            .iter()
            .flat_map(|a| [&id1, &not].map(|b| pmf::product(a, b).unwrap()))
            .collect();
        let want: Vec<Pmf> = pmf::all_of_shape(b2(), 2, 2)
            .unwrap()
            .filter(|f| tops.iter().any(|t| f.is_subfunction_of(t)))
            .collect();
        assert_eq!(c.members(2, 2).unwrap(), want);
        assert_eq!(c.members(1, 1).unwrap().len(), 7);
    }

    #[test]
    fn closure_is_idempotent() {
        let c = BoundedClone::closure(b2(), caps(2, 2), &[gates::cnot(), gates::swap()]).unwrap();
        let tops: Vec<Pmf> = c.all_maximal().cloned().collect();
        let again = BoundedClone::closure(b2(), caps(2, 2), &tops).unwrap();
        assert!(c.same_members(&again).unwrap());
    }

    #[test]
    fn pol_of_delta_is_partial_functions() {
        let d = builtin::delta(b2(), OrderKind::Leq);
        let c = pol_bounded(b2(), caps(1, 1), &[d], DEFAULT_BUDGET).unwrap();
        let want = pmf::all_of_shape(b2(), 1, 1).unwrap().filter(|f| f.is_univalued()).count();
        assert_eq!(want, 9);
        assert_eq!(c.family(1, 1).unwrap().count(), Some(9));
        for f in c.members(1, 1).unwrap() {
            assert!(f.is_univalued());
        }
    }

    #[test]
    fn pol_of_nullary_equality_keeps_square_shapes() {
        let w = builtin::cst1_nat(b2(), 0, OrderKind::Eq, 9).unwrap();
        let c = pol_bounded(b2(), caps(2, 2), &[w], DEFAULT_BUDGET).unwrap();
        for s in c.inhabited_shapes() {
            assert_eq!(s.n, s.m);
        }
        assert_eq!(c.inhabited_shapes().len(), 3);
    }

    #[test]
    fn pol_of_nothing_is_everything() {
        let c = pol_bounded(b2(), caps(2, 2), &[], DEFAULT_BUDGET).unwrap();
        assert_eq!(c.family(2, 2).unwrap().count(), Some(1 << 16));
        assert!(c.is_complete());
    }

    #[test]
    fn pol_agrees_with_preserves() {
        let w = builtin::affine(b2());
        let c = pol_bounded(b2(), caps(2, 1), &[w.clone()], DEFAULT_BUDGET).unwrap();
        for f in pmf::all_of_shape(b2(), 2, 1).unwrap() {
            let direct = preserve::preserves(&f, &w, DEFAULT_BUDGET).unwrap().holds();
            assert_eq!(c.member(&f).unwrap(), direct, "{f}");
        }
    }

    #[test]
    fn budget_skips_shapes() {
        let w = builtin::affine(b2());
        let c = pol_bounded(b2(), caps(2, 2), &[w], 1000).unwrap();
        assert!(!c.is_complete());
        assert!(c.family(2, 2).unwrap().is_skipped());
        assert!(c.member(&gates::cnot()).is_err());
    }

    #[test]
    fn corpus_counts() {
        let cons = builtin::conservative(b2(), 9).unwrap();
        let counts: Vec<usize> = (1..=3)
            .map(|n| pol_permutations(b2(), n, &[cons.clone()], DEFAULT_BUDGET).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 36]);
        let mod2 = builtin::modc(b2(), 2).unwrap();
        assert_eq!(pol_permutations(b2(), 2, &[mod2.clone()], DEFAULT_BUDGET).unwrap().len(), 4);
        let aff = builtin::affine(b2());
        assert_eq!(pol_total_functions(b2(), 2, 1, &[aff.clone()], DEFAULT_BUDGET).unwrap().len(), 8);
        assert_eq!(pol_total_functions(b2(), 1, 1, &[aff], DEFAULT_BUDGET).unwrap().len(), 4);
    }
}
