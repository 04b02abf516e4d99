//! Permutation clones, the ancilla rules, and master weights.

use std::collections::{BTreeSet, VecDeque};

use crate::config::BaseSet;
use crate::error::{Error, Result, Violation};
use crate::pmf::Pmf;
use crate::weights::Weight;

/// The partial ancilla rule: `g(x) ≈ y` iff `f(x, c) ≈ (y, c)`.
pub fn ancilla_partial(f: &Pmf, c: usize) -> Result<Pmf> {
    if f.n() == 0 || f.m() == 0 {
        return Err(Error::Shape(format!("ancilla rule needs an input and an output wire, got {}", f.shape())));
    }
    let b = f.base().size();
    if c >= b {
        return Err(Error::Range(format!("ancilla value {c} outside B")));
    }
    Pmf::from_pairs(
        f.base(),
        f.n() - 1,
        f.m() - 1,
        f.pairs().filter(|&(x, y)| x % b == c && y % b == c).map(|(x, y)| (x / b, y / b)),
    )
}

type Perm = Vec<u16>;

fn identity_perm(points: usize) -> Perm {
    (0..points as u16).collect()
}

/// `p ∘ q`.
fn after(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&x| p[x as usize]).collect()
}

fn to_perm(f: &Pmf) -> Result<Perm> {
    if !f.is_permutation() {
        return Err(Error::Precondition(format!("{f} is not a permutation")));
    }
    Ok((0..f.in_count()).map(|x| f.apply(x).expect("total") as u16).collect())
}

fn to_pmf(base: BaseSet, n: usize, p: &Perm) -> Pmf {
    Pmf::from_fn(base, n, n, |x| p[x] as usize).expect("permutation within arity limits")
}

/// `h × id_extra` on `B^(a+extra)`.
fn widen(h: &Perm, extra: usize) -> Perm {
    let mut out = Vec::with_capacity(h.len() * extra);
    for x in 0..h.len() * extra {
        let (hi, lo) = (x / extra, x % extra);
        out.push((h[hi] as usize * extra + lo) as u16);
    }
    out
}

/// Transpositions of adjacent variables of `B^n`.
fn variable_transpositions(b: usize, n: usize) -> Vec<Perm> {
    let points = b.pow(n as u32);
    (0..n.saturating_sub(1))
        .map(|i| {
            (0..points)
                .map(|x| {
                    let mut d = crate::tuple::decode(b, n, x);
                    d.swap(i, i + 1);
                    crate::tuple::encode(b, &d) as u16
                })
                .collect()
        })
        .collect()
}

/// An application of the total ancilla rule, kept for re-verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AncillaStep {
    pub derived: Pmf,
    pub source: Pmf,
    /// The ancilla string `a`, as a tuple code over `B^m`.
    pub ancilla: usize,
    pub ancilla_width: usize,
}

#[derive(Debug, Clone)]
pub struct PermutationClone {
    base: BaseSet,
    n_max: usize,
    generators: Vec<Pmf>,
    use_ancilla: bool,
    groups: Vec<BTreeSet<Perm>>,
    /// Generating list of each arity's group.
    gens: Vec<Vec<Perm>>,
    steps: Vec<AncillaStep>,
    complete: bool,
}

/// Breadth-first closure of `gens` under composition; stops at `cap`
/// elements.
fn generate(points: usize, gens: &[Perm], cap: usize) -> (BTreeSet<Perm>, bool) {
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let id = identity_perm(points);
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(e) = queue.pop_front() {
        for s in gens {
            let p = after(s, &e);
            if !seen.contains(&p) {
                if seen.len() >= cap {
                    return (seen, false);
                }
                seen.insert(p.clone());
                queue.push_back(p);
            }
        }
    }
    (seen, true)
}

impl PermutationClone {
    /// The least permutation clone on arities `0..=n_max` containing the
    /// generators, optionally closed under the total ancilla rule. Groups
    /// larger than `group_cap` are truncated and clear the completeness
    /// flag.
    pub fn closure(base: BaseSet, n_max: usize, generators: &[Pmf], use_ancilla: bool, group_cap: usize) -> Result<Self> {
        let b = base.size();
        if base.tuples(n_max) > u16::MAX as usize {
            return Err(Error::Cap {
                what: format!("points of B^{n_max}"),
                size: base.tuples(n_max),
                cap: u16::MAX as usize,
            });
        }
        let mut own: Vec<BTreeSet<Perm>> = vec![BTreeSet::new(); n_max + 1];
        for g in generators {
            if g.base() != base || g.n() != g.m() || g.n() > n_max {
                return Err(Error::Shape(format!("generator of shape {} outside arities 0..={n_max}", g.shape())));
            }
            own[g.n()].insert(to_perm(g)?);
        }
        let mut steps = Vec::new();
        loop {
            let mut complete = true;
            let mut gens: Vec<Vec<Perm>> = Vec::with_capacity(n_max + 1);
            let mut groups = Vec::with_capacity(n_max + 1);
            for n in 0..=n_max {
                let mut list: BTreeSet<Perm> = variable_transpositions(b, n).into_iter().collect();
                list.extend(own[n].iter().cloned());
                for (a, lower) in gens.iter().enumerate() {
                    for h in lower {
                        list.insert(widen(h, b.pow((n - a) as u32)));
                    }
                }
                let list: Vec<Perm> = list.into_iter().collect();
                let (group, done) = generate(base.tuples(n), &list, group_cap);
                complete &= done;
                gens.push(list);
                groups.push(group);
            }
            let mut clone = PermutationClone {
                base,
                n_max,
                generators: generators.to_vec(),
                use_ancilla,
                groups,
                gens,
                steps: steps.clone(),
                complete,
            };
            if !use_ancilla {
                return Ok(clone);
            }
            let fresh = clone.ancilla_candidates();
            let mut changed = false;
            for step in fresh {
                let g = to_perm(&step.derived)?;
                if own[step.derived.n()].insert(g) {
                    steps.push(step);
                    changed = true;
                }
            }
            if !changed {
                clone.steps = steps;
                return Ok(clone);
            }
        }
    }

    /// Permutations `g` obtained by the total ancilla rule from current
    /// members but missing from the current groups.
    fn ancilla_candidates(&self) -> Vec<AncillaStep> {
        let b = self.base.size();
        let mut out = Vec::new();
        for total in 1..=self.n_max {
            for width in 1..=total {
                let n = total - width;
                if n == 0 {
                    continue;
                }
                let slice = b.pow(width as u32);
                for f in &self.groups[total] {
                    for a in 0..slice {
                        let mut g = Vec::with_capacity(b.pow(n as u32));
                        let mut fixes = true;
                        for x in 0..b.pow(n as u32) {
                            let y = f[x * slice + a] as usize;
                            if y % slice != a {
                                fixes = false;
                                break;
                            }
                            g.push((y / slice) as u16);
                        }
                        if fixes && !self.groups[n].contains(&g) {
                            out.push(AncillaStep {
                                derived: to_pmf(self.base, n, &g),
                                source: to_pmf(self.base, total, f),
                                ancilla: a,
                                ancilla_width: width,
                            });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn base(&self) -> BaseSet {
        self.base
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn generators(&self) -> &[Pmf] {
        &self.generators
    }

    pub fn is_ancilla_closed(&self) -> bool {
        self.use_ancilla
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn order(&self, n: usize) -> usize {
        self.groups.get(n).map_or(0, BTreeSet::len)
    }

    /// Members of arity `n` in lexicographic order of their tables.
    pub fn members(&self, n: usize) -> Vec<Pmf> {
        self.groups
            .get(n)
            .map(|g| g.iter().map(|p| to_pmf(self.base, n, p)).collect())
            .unwrap_or_default()
    }

    pub fn contains(&self, f: &Pmf) -> Result<bool> {
        if f.n() != f.m() || f.n() > self.n_max {
            return Err(Error::Shape(format!("shape {} outside arities 0..={}", f.shape(), self.n_max)));
        }
        if !f.is_permutation() {
            return Ok(false);
        }
        Ok(self.groups[f.n()].contains(&to_perm(f)?))
    }

    pub fn ancilla_steps(&self) -> &[AncillaStep] {
        &self.steps
    }

    /// Re-checks every recorded ancilla step against the final groups.
    pub fn verify_ancilla(&self) -> Result<(), Violation> {
        for s in &self.steps {
            let slice = self.base.tuples(s.ancilla_width);
            let sound = (0..s.derived.in_count()).all(|x| {
                s.source.apply(x * slice + s.ancilla) == s.derived.apply(x).map(|y| y * slice + s.ancilla)
            });
            let present = self.contains(&s.source).unwrap_or(false) && self.contains(&s.derived).unwrap_or(false);
            if !sound || !present {
                return Err(Violation::new(
                    "total ancilla rule",
                    vec![s.source.to_string(), s.derived.to_string()],
                ));
            }
        }
        Ok(())
    }

    /// Each arity class contains the identity and the variable permutations
    /// and is closed under its generating list; classes are closed under
    /// products.
    pub fn verify_groups(&self) -> Result<(), Violation> {
        let b = self.base.size();
        for (n, group) in self.groups.iter().enumerate() {
            if !group.contains(&identity_perm(b.pow(n as u32))) {
                return Err(Violation::new("identity", vec![format!("arity {n}")]));
            }
            for t in variable_transpositions(b, n) {
                if !group.contains(&t) {
                    return Err(Violation::new("variable permutations", vec![format!("arity {n}")]));
                }
            }
            for e in group {
                for s in &self.gens[n] {
                    if !group.contains(&after(s, e)) {
                        return Err(Violation::new("composition", vec![format!("arity {n}")]));
                    }
                }
            }
            for a in 1..n {
                for h in &self.gens[a] {
                    if !group.contains(&widen(h, b.pow((n - a) as u32))) {
                        return Err(Violation::new("product", vec![format!("arities {a} and {}", n - a)]));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MasterVerdict {
    Master,
    /// The diagonal value `w(x, .., x)` is not invertible.
    NotMaster { x: usize },
}

/// Decides whether a permutation weight is a master weight: all diagonal
/// values invertible.
pub fn master_weight_check(w: &Weight) -> Result<MasterVerdict> {
    let m = w.pomonoid();
    if !m.is_commutative() || !m.is_trivially_ordered() {
        return Err(Error::Precondition(
            "a permutation weight needs a commutative, trivially ordered target".into(),
        ));
    }
    let b = w.base().size();
    for x in 0..b {
        if !m.is_invertible(w.value_of(&vec![x; w.arity()])) {
            return Ok(MasterVerdict::NotMaster { x });
        }
    }
    Ok(MasterVerdict::Master)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DEFAULT_BUDGET;
    use crate::galois::preserves;
    use crate::gates;
    use crate::order::OrderKind;
    use crate::pmf;
    use crate::weights::builtin;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn b2() -> BaseSet {
        BaseSet::boolean()
    }

    #[test]
    fn partial_rule() {
        assert_eq!(
            ancilla_partial(&gates::cnot(), 0).unwrap(),
            Pmf::from_pairs(b2(), 1, 1, [(0, 0)]).unwrap()
        );
        assert_eq!(ancilla_partial(&gates::cnot_reversed(), 0).unwrap(), pmf::identity(b2(), 1).unwrap());
        assert_eq!(ancilla_partial(&pmf::identity(b2(), 2).unwrap(), 1).unwrap(), pmf::identity(b2(), 1).unwrap());
        assert_eq!(
            ancilla_partial(&gates::swap(), 0).unwrap(),
            Pmf::from_pairs(b2(), 1, 1, [(0, 0)]).unwrap()
        );
        assert!(ancilla_partial(&pmf::constant(b2(), &[1]).unwrap(), 0).is_err());
    }

    #[test]
    fn linear_group() {
        let c = PermutationClone::closure(b2(), 2, &[gates::cnot(), gates::cnot_reversed(), gates::swap()], false, 1 << 16)
            .unwrap();
        assert_eq!(c.order(2), 6);
        // GL(2,2): the permutations of B^2 fixing 00 that are additive
        let gl: Vec<Pmf> = (0..4usize)
            .flat_map(|p| (0..4usize).map(move |q| (p, q)))
            .filter_map(|(p, q)| {
                let f = Pmf::from_fn(b2(), 2, 2, |x| (if x & 2 != 0 { p } else { 0 }) ^ (if x & 1 != 0 { q } else { 0 })).ok()?;
                f.is_permutation().then_some(f)
            })
            .collect();
        assert_eq!(gl.len(), 6);
        for f in &gl {
            assert!(c.contains(f).unwrap());
        }
        c.verify_groups().unwrap();
    }

    #[test]
    fn no_generators() {
        let c = PermutationClone::closure(b2(), 2, &[], false, 1 << 16).unwrap();
        assert_eq!((c.order(0), c.order(1), c.order(2)), (1, 1, 2));
    }

    #[test]
    fn fredkin_with_ancillas_stays_conservative() {
        let c = PermutationClone::closure(b2(), 3, &[gates::fredkin()], true, 1 << 16).unwrap();
        let w = builtin::conservative(b2(), 9).unwrap();
        for n in 0..=3 {
            for f in c.members(n) {
                assert!(preserves(&f, &w, DEFAULT_BUDGET).unwrap().holds(), "{f}");
            }
        }
        assert!(!c.contains(&gates::not()).unwrap());
        c.verify_ancilla().unwrap();
        c.verify_groups().unwrap();
    }

    #[test]
    fn toffoli_with_ancilla_yields_cnot() {
        // with the first control fixed to 1, Toffoli acts as CNOT
        let c = PermutationClone::closure(b2(), 3, &[gates::toffoli()], true, 1 << 16).unwrap();
        assert!(c.contains(&gates::cnot()).unwrap());
        assert!(!c.ancilla_steps().is_empty());
        c.verify_ancilla().unwrap();
        let plain = PermutationClone::closure(b2(), 3, &[gates::toffoli()], false, 1 << 16).unwrap();
        assert!(!plain.contains(&gates::cnot()).unwrap());
    }

    #[test]
    fn generator_order_does_not_matter() {
        let mut gens = vec![gates::toffoli(), gates::not(), gates::fredkin(), gates::swap()];
        let first = PermutationClone::closure(b2(), 3, &gens, true, 1 << 16).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..3 {
            gens.shuffle(&mut rng);
            let again = PermutationClone::closure(b2(), 3, &gens, true, 1 << 16).unwrap();
            for n in 0..=3 {
                assert_eq!(again.members(n), first.members(n));
            }
        }
    }

    #[test]
    fn conjugation_by_variable_permutations() {
        let c = PermutationClone::closure(b2(), 3, &[gates::toffoli()], false, 1 << 16).unwrap();
        let swaps: Vec<Pmf> = [[1usize, 0, 2], [0, 2, 1]]
            .iter()
            .map(|rho| pmf::variable_map(b2(), 3, rho).unwrap())
            .collect();
        for f in c.members(3) {
            for s in &swaps {
                let g = pmf::compose(s, &pmf::compose(&f, s).unwrap()).unwrap();
                assert!(c.contains(&g).unwrap());
            }
        }
    }

    #[test]
    fn group_cap_marks_incomplete() {
        let c = PermutationClone::closure(b2(), 3, &[gates::toffoli(), gates::not(), gates::cnot()], false, 100).unwrap();
        assert!(!c.is_complete());
    }

    #[test]
    fn master_weights() {
        assert_eq!(master_weight_check(&builtin::modc(b2(), 3).unwrap()).unwrap(), MasterVerdict::Master);
        assert_eq!(
            master_weight_check(&builtin::conservative(b2(), 9).unwrap()).unwrap(),
            MasterVerdict::NotMaster { x: 1 }
        );
        assert_eq!(master_weight_check(&builtin::delta(b2(), OrderKind::Eq)).unwrap(), MasterVerdict::Master);
        assert!(master_weight_check(&builtin::delta(b2(), OrderKind::Leq)).is_err());
    }
}
