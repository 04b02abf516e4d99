//! Grillet's monoids `[Ω,G,σ]` built from a commutative nilsemigroup, an
//! abelian group and a factor set, with the weak-irreducibility test.

use std::collections::BTreeSet;

use crate::error::{Error, Result, Violation};
use crate::order::preorder::subdirectly_irreducible;
use crate::order::{Pomonoid, Quasivariety, SiVerdict};

/// Name reserved for the unit adjoined in `Ω¹`.
pub const ADJOINED_UNIT: &str = "1";

pub const MAX_NILSEMIGROUP: usize = 64;

/// A finite semigroup with an absorbing element in which every element is
/// nilpotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nilsemigroup {
    names: Vec<String>,
    mul: Vec<usize>,
    zero: usize,
}

impl Nilsemigroup {
    pub fn new(names: Vec<String>, mul: Vec<usize>, zero: usize) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Malformed("nilsemigroup without elements".into()));
        }
        if n > MAX_NILSEMIGROUP {
            return Err(Error::Cap { what: "nilsemigroup".into(), size: n, cap: MAX_NILSEMIGROUP });
        }
        if mul.len() != n * n {
            return Err(Error::Shape(format!("multiplication table has {} entries, expected {}", mul.len(), n * n)));
        }
        if let Some(&bad) = mul.iter().find(|&&x| x >= n) {
            return Err(Error::Range(format!("table entry {bad} outside 0..{n}")));
        }
        if zero >= n {
            return Err(Error::Range(format!("zero {zero} outside 0..{n}")));
        }
        let unique: BTreeSet<&String> = names.iter().collect();
        if unique.len() != n {
            return Err(Error::Malformed("duplicate element names".into()));
        }
        if names.iter().any(|s| s == ADJOINED_UNIT) {
            return Err(Error::Malformed(format!("{ADJOINED_UNIT:?} is reserved for the unit of Ω¹")));
        }
        let s = Nilsemigroup { names, mul, zero };
        s.check_axioms()?;
        Ok(s)
    }

    fn check_axioms(&self) -> Result<(), Violation> {
        let n = self.size();
        let name = |x: usize| self.names[x].clone();
        for x in 0..n {
            if self.mul(x, self.zero) != self.zero || self.mul(self.zero, x) != self.zero {
                return Err(Violation::new("zero is absorbing", vec![name(x)]));
            }
            for y in 0..n {
                for z in 0..n {
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return Err(Violation::new("associativity", vec![name(x), name(y), name(z)]));
                    }
                }
            }
            let mut p = x;
            for _ in 0..n {
                p = self.mul(p, x);
            }
            if p != self.zero {
                return Err(Violation::new("nilpotency", vec![name(x)]));
            }
        }
        Ok(())
    }

    /// `Ω = {0}`.
    pub fn trivial() -> Self {
        Nilsemigroup { names: vec!["0".into()], mul: vec![0], zero: 0 }
    }

    /// `⟨{1,…,d}, min{d, x+y}⟩`, with elements named `x1`, …, `xd`.
    pub fn truncation(d: usize) -> Result<Self> {
        if d == 0 || d > MAX_NILSEMIGROUP {
            return Err(Error::Range(format!("truncation depth {d}")));
        }
        let mul = (0..d * d).map(|i| (i / d + i % d + 1).min(d - 1)).collect();
        Ok(Nilsemigroup {
            names: (1..=d).map(|i| format!("x{i}")).collect(),
            mul,
            zero: d - 1,
        })
    }

    /// `{a, b, mu, 0}` where every product of `a` and `b` is `mu` and all
    /// other products vanish: `a` and `b` cannot be told apart.
    pub fn twin_squares() -> Self {
        let names = ["a", "b", "mu", "0"].map(String::from).to_vec();
        let mut mul = vec![3; 16];
        for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            mul[x * 4 + y] = 2;
        }
        Nilsemigroup { names, mul, zero: 3 }
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size() + b]
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Names of `Ω¹`, whose adjoined unit has index `size()`.
    pub fn name(&self, a: usize) -> &str {
        self.names.get(a).map_or(ADJOINED_UNIT, String::as_str)
    }

    /// Looks up an element of `Ω¹`.
    pub fn index_of(&self, name: &str) -> Result<usize> {
        if name == ADJOINED_UNIT {
            return Ok(self.size());
        }
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownName(format!("nilsemigroup element {name:?}")))
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn unit(&self) -> usize {
        self.size()
    }

    /// Multiplication in `Ω¹`.
    pub fn mul1(&self, a: usize, b: usize) -> usize {
        match (a == self.unit(), b == self.unit()) {
            (true, _) => b,
            (_, true) => a,
            _ => self.mul(a, b),
        }
    }

    /// Nonzero elements of `Ω¹`: the nonzero elements of `Ω`, then `1`.
    pub fn nonzero1(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.size()).filter(move |&a| a != self.zero)
    }

    /// The canonical order: `x ≤ y` iff `x = uy` for some `u ∈ Ω¹`.
    pub fn canonical_leq(&self, x: usize, y: usize) -> bool {
        x == y || (0..self.size()).any(|u| self.mul(u, y) == x)
    }

    /// The unique minimal element of `Ω ∖ {0}`, if there is one.
    pub fn mu(&self) -> Option<usize> {
        let nonzero: Vec<usize> = (0..self.size()).filter(|&x| x != self.zero).collect();
        let minimal: Vec<usize> = nonzero
            .iter()
            .copied()
            .filter(|&x| nonzero.iter().all(|&y| y == x || !self.canonical_leq(y, x)))
            .collect();
        match minimal[..] {
            [mu] => Some(mu),
            _ => None,
        }
    }
}

/// `σ_{α,β} ∈ G` for `α, β ∈ Ω¹`, stored densely; entries with `αβ = 0`
/// are unused and hold the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    group: Pomonoid,
    width: usize,
    sigma: Vec<usize>,
}

impl FactorSet {
    pub fn trivial(omega: &Nilsemigroup, group: &Pomonoid) -> Result<Self> {
        check_group(group)?;
        let width = omega.size() + 1;
        Ok(FactorSet {
            group: group.trivially_ordered(),
            width,
            sigma: vec![group.unit(); width * width],
        })
    }

    /// Unlisted entries default to the identity; listing an entry with
    /// `αβ = 0` is an error.
    pub fn from_entries(omega: &Nilsemigroup, group: &Pomonoid, entries: &[(usize, usize, usize)]) -> Result<Self> {
        let mut s = FactorSet::trivial(omega, group)?;
        for &(a, b, g) in entries {
            if a > omega.size() || b > omega.size() || g >= group.size() {
                return Err(Error::Range(format!("factor set entry ({a},{b},{g})")));
            }
            if omega.mul1(a, b) == omega.zero() {
                return Err(Error::Malformed(format!(
                    "factor set entry for {}·{} = 0",
                    omega.name(a),
                    omega.name(b)
                )));
            }
            s.sigma[a * s.width + b] = g;
        }
        Ok(s)
    }

    pub fn group(&self) -> &Pomonoid {
        &self.group
    }

    pub fn get(&self, a: usize, b: usize) -> usize {
        self.sigma[a * self.width + b]
    }

    /// Listed entries `(α, β, g)` with `αβ ≠ 0`, in index order.
    pub fn entries(&self, omega: &Nilsemigroup) -> Vec<(usize, usize, usize)> {
        omega
            .nonzero1()
            .flat_map(|a| omega.nonzero1().map(move |b| (a, b)))
            .filter(|&(a, b)| omega.mul1(a, b) != omega.zero())
            .map(|(a, b)| (a, b, self.get(a, b)))
            .collect()
    }

    /// Symmetry, normalization and the cocycle identity.
    pub fn validate(&self, omega: &Nilsemigroup) -> Result<(), Violation> {
        if self.width != omega.size() + 1 {
            return Err(Violation::new("factor set is indexed by Ω¹", vec![]));
        }
        let g = &self.group;
        let one = omega.unit();
        let zero = omega.zero();
        let names = |xs: &[usize]| xs.iter().map(|&x| omega.name(x).to_string()).collect();
        for a in omega.nonzero1() {
            if self.get(a, one) != g.unit() {
                return Err(Violation::new("normalization σ(α,1) = 1", names(&[a])));
            }
            for b in omega.nonzero1() {
                let ab = omega.mul1(a, b);
                if ab == zero {
                    continue;
                }
                if self.get(a, b) != self.get(b, a) {
                    return Err(Violation::new("symmetry σ(α,β) = σ(β,α)", names(&[a, b])));
                }
            }
        }
        for a in omega.nonzero1() {
            for b in omega.nonzero1() {
                let ab = omega.mul1(a, b);
                if ab == zero {
                    continue;
                }
                for c in omega.nonzero1() {
                    let bc = omega.mul1(b, c);
                    if omega.mul1(ab, c) == zero {
                        continue;
                    }
                    let lhs = g.mul(self.get(a, b), self.get(ab, c));
                    let rhs = g.mul(self.get(a, bc), self.get(b, c));
                    if lhs != rhs {
                        return Err(Violation::new("cocycle σ(α,β)σ(αβ,γ) = σ(α,βγ)σ(β,γ)", names(&[a, b, c])));
                    }
                }
            }
        }
        Ok(())
    }

    /// `σ'(α,β) = σ(α,β) u_α u_β u_{αβ}⁻¹`, with `u` indexed by `Ω¹` and
    /// `u_1` taken to be the identity.
    pub fn coboundary(&self, omega: &Nilsemigroup, u: &[usize]) -> Result<FactorSet> {
        if u.len() != self.width {
            return Err(Error::Shape(format!("{} coboundary values for {} elements of Ω¹", u.len(), self.width)));
        }
        let g = &self.group;
        let at = |a: usize| if a == omega.unit() { g.unit() } else { u[a] };
        let mut out = self.clone();
        for a in omega.nonzero1() {
            for b in omega.nonzero1() {
                let ab = omega.mul1(a, b);
                if ab != omega.zero() {
                    let inv = g.inverse_of(at(ab)).expect("group element");
                    out.sigma[a * self.width + b] = g.product([self.get(a, b), at(a), at(b), inv]);
                }
            }
        }
        Ok(out)
    }
}

fn check_group(g: &Pomonoid) -> Result<()> {
    if !g.is_commutative() || g.elements().any(|x| !g.is_invertible(x)) {
        return Err(Error::Precondition("factor sets take values in an abelian group".into()));
    }
    Ok(())
}

/// Element `(g, α)` of `[Ω,G,σ]`; index 0 is the zero.
fn pair_index(omega: &Nilsemigroup, group: usize, g: usize, a: usize) -> usize {
    let rank = if a < omega.zero() { a } else { a - 1 };
    1 + rank * group + g
}

/// The commutative monoid `[Ω,G,σ]`, trivially ordered. Elements are `0`
/// followed by `(g,α)` grouped by `α ∈ Ω¹ ∖ {0}`, with `α = 1` last.
pub fn grillet_monoid(omega: &Nilsemigroup, sigma: &FactorSet) -> Result<Pomonoid> {
    if !omega.is_commutative() {
        return Err(Error::Precondition("Ω must be commutative".into()));
    }
    sigma.validate(omega)?;
    let g = &sigma.group;
    let gs = g.size();
    let alphas: Vec<usize> = omega.nonzero1().collect();
    let size = 1 + gs * alphas.len();
    let mut names = vec!["0".to_string()];
    for &a in &alphas {
        for x in g.elements() {
            names.push(format!("({},{})", g.name(x), omega.name(a)));
        }
    }
    let mut mul = vec![0usize; size * size];
    for &a in &alphas {
        for x in g.elements() {
            let i = pair_index(omega, gs, x, a);
            for &b in &alphas {
                let ab = omega.mul1(a, b);
                if ab == omega.zero() {
                    continue;
                }
                for y in g.elements() {
                    let j = pair_index(omega, gs, y, b);
                    let z = g.product([x, y, sigma.get(a, b)]);
                    mul[i * size + j] = pair_index(omega, gs, z, ab);
                }
            }
        }
    }
    let leq = (0..size * size).map(|i| i / size == i % size).collect();
    let unit = pair_index(omega, gs, g.unit(), omega.unit());
    let m = Pomonoid::new(names, unit, mul, leq)?;
    if !m.is_commutative() {
        return Err(Error::Axiom(Violation::new("[Ω,G,σ] is commutative", vec![])));
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakIrreducibility {
    Holds,
    /// Distinct `α, β ∈ Ω¹ ∖ {0}` with the same `μ`-annihilator on which
    /// `τ ↦ σ(α,τ)σ(β,τ)⁻¹` is constant.
    Fails { alpha: usize, beta: usize },
    Inapplicable(String),
}

/// Checks weak irreducibility with `α, β` ranging over `Ω¹ ∖ {0}` and
/// `τ` over `Ω`. A trivial `Ω` holds vacuously.
pub fn weak_irreducibility(omega: &Nilsemigroup, sigma: &FactorSet) -> WeakIrreducibility {
    if omega.size() == 1 {
        return WeakIrreducibility::Holds;
    }
    let Some(mu) = omega.mu() else {
        return WeakIrreducibility::Inapplicable("Ω has no unique minimal nonzero element".into());
    };
    let g = &sigma.group;
    let annihilator = |a: usize| -> Vec<usize> { (0..omega.size()).filter(|&t| omega.mul1(t, a) == mu).collect() };
    let alphas: Vec<usize> = omega.nonzero1().collect();
    for (i, &a) in alphas.iter().enumerate() {
        let ann = annihilator(a);
        for &b in &alphas[i + 1..] {
            if annihilator(b) != ann {
                continue;
            }
            let ratio = |t: usize| g.mul(sigma.get(a, t), g.inverse_of(sigma.get(b, t)).expect("group"));
            if ann.windows(2).all(|w| ratio(w[0]) == ratio(w[1])) {
                return WeakIrreducibility::Fails { alpha: a, beta: b };
            }
        }
    }
    WeakIrreducibility::Holds
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Spotcheck {
    /// The assembled monoid is subdirectly irreducible with this monolith.
    Confirmed { monolith: (usize, usize) },
    /// The hypotheses hold but the monoid is not subdirectly irreducible.
    Refuted(String),
    Inapplicable(String),
}

fn prime_power(n: usize) -> bool {
    let Some(p) = (2..=n).find(|p| n % p == 0) else {
        return false;
    };
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

fn is_cyclic(g: &Pomonoid) -> bool {
    g.elements().any(|x| {
        let mut p = x;
        let mut order = 1;
        while p != g.unit() {
            p = g.mul(p, x);
            order += 1;
        }
        order == g.size()
    })
}

/// Builds `[Ω,G,σ]` under the hypotheses of Grillet's theorem and checks
/// subdirect irreducibility among trivially ordered monoids.
pub fn thm64_spotcheck(omega: &Nilsemigroup, sigma: &FactorSet) -> Result<Spotcheck> {
    let g = &sigma.group;
    if g.size() > 1 && !(is_cyclic(g) && prime_power(g.size())) {
        return Ok(Spotcheck::Inapplicable(format!(
            "G of order {} is neither trivial nor cyclic of prime-power order",
            g.size()
        )));
    }
    match weak_irreducibility(omega, sigma) {
        WeakIrreducibility::Holds => {}
        WeakIrreducibility::Fails { alpha, beta } => {
            return Ok(Spotcheck::Inapplicable(format!(
                "not weakly irreducible: {} and {} cannot be separated",
                omega.name(alpha),
                omega.name(beta)
            )))
        }
        WeakIrreducibility::Inapplicable(why) => return Ok(Spotcheck::Inapplicable(why)),
    }
    let m = grillet_monoid(omega, sigma)?;
    Ok(match subdirectly_irreducible(&m, Quasivariety::CommutativeTriviallyOrdered)? {
        SiVerdict::Irreducible { monolith, .. } => Spotcheck::Confirmed { monolith },
        SiVerdict::Trivial => Spotcheck::Refuted("the assembled monoid is trivial".into()),
        SiVerdict::Reducible { separating } => Spotcheck::Refuted(format!(
            "separated by {} proper quotients",
            separating.len()
        )),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::pomonoid::{cyclic, trivial};
    use itertools::Itertools;

    fn isomorphic(a: &Pomonoid, b: &Pomonoid) -> bool {
        let n = a.size();
        n == b.size()
            && (0..n).permutations(n).any(|p| {
                p[a.unit()] == b.unit()
                    && a.elements().all(|x| a.elements().all(|y| p[a.mul(x, y)] == b.mul(p[x], p[y])))
            })
    }

    #[test]
    fn trivial_omega_adjoins_a_zero() {
        let omega = Nilsemigroup::trivial();
        let g = cyclic(2).unwrap();
        let m = grillet_monoid(&omega, &FactorSet::trivial(&omega, &g).unwrap()).unwrap();
        assert_eq!(m.size(), 3);
        assert_eq!(m.names(), ["0", "(0,1)", "(1,1)"]);
        assert_eq!(m.unit(), 1);
        assert!(m.elements().all(|x| m.mul(0, x) == 0));
    }

    #[test]
    fn truncation_two() {
        let omega = Nilsemigroup::truncation(2).unwrap();
        assert_eq!(omega.mu(), Some(0));
        let m = grillet_monoid(&omega, &FactorSet::trivial(&omega, &trivial()).unwrap()).unwrap();
        assert_eq!(m.size(), 3);
        assert!(m.is_commutative());
    }

    #[test]
    fn mu_is_minimal_nonzero() {
        assert_eq!(Nilsemigroup::truncation(3).unwrap().mu(), Some(1));
        assert_eq!(Nilsemigroup::twin_squares().mu(), Some(2));
        assert_eq!(Nilsemigroup::trivial().mu(), None);
    }

    #[test]
    fn malformed_nilsemigroups() {
        let names = || vec!["e".to_string(), "0".to_string()];
        // e·e = e is not nilpotent
        assert!(matches!(
            Nilsemigroup::new(names(), vec![0, 1, 1, 1], 1),
            Err(Error::Axiom(ref v)) if v.axiom == "nilpotency"
        ));
        assert!(Nilsemigroup::new(vec!["1".into()], vec![0], 0).is_err());
    }

    #[test]
    fn invalid_factor_sets_have_witnesses() {
        let omega = Nilsemigroup::truncation(5).unwrap();
        let g = cyclic(2).unwrap();
        let (x1, x2, one) = (0, 1, omega.unit());

        let s = FactorSet::from_entries(&omega, &g, &[(x2, x2, 1)]).unwrap();
        let err = grillet_monoid(&omega, &s).unwrap_err();
        match err {
            Error::Axiom(v) => {
                assert!(v.axiom.starts_with("cocycle"));
                assert_eq!(v.witness.len(), 3);
            }
            e => panic!("{e}"),
        }

        let s = FactorSet::from_entries(&omega, &g, &[(x1, x2, 1)]).unwrap();
        assert!(s.validate(&omega).unwrap_err().axiom.starts_with("symmetry"));

        let s = FactorSet::from_entries(&omega, &g, &[(x1, one, 1), (one, x1, 1)]).unwrap();
        assert!(s.validate(&omega).unwrap_err().axiom.starts_with("normalization"));

        // x2·x4 = x5 = 0
        assert!(FactorSet::from_entries(&omega, &g, &[(x2, 3, 1)]).is_err());
    }

    #[test]
    fn nontrivial_cocycle_is_accepted() {
        // Ω = {x, y, z, 0} with xy = yx = z and all other products 0
        let names = ["x", "y", "z", "0"].map(String::from).to_vec();
        let mut mul = vec![3; 16];
        mul[1] = 2;
        mul[4] = 2;
        let omega = Nilsemigroup::new(names, mul, 3).unwrap();
        let g = cyclic(2).unwrap();
        let s = FactorSet::from_entries(&omega, &g, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        s.validate(&omega).unwrap();
        let m = grillet_monoid(&omega, &s).unwrap();
        assert_eq!(m.size(), 1 + 2 * 4);
    }

    #[test]
    fn weak_irreducibility_examples() {
        let g = trivial();
        for omega in [Nilsemigroup::trivial(), Nilsemigroup::truncation(2).unwrap(), Nilsemigroup::truncation(3).unwrap()] {
            let s = FactorSet::trivial(&omega, &g).unwrap();
            assert_eq!(weak_irreducibility(&omega, &s), WeakIrreducibility::Holds);
        }
        let omega = Nilsemigroup::twin_squares();
        let s = FactorSet::trivial(&omega, &g).unwrap();
        assert_eq!(weak_irreducibility(&omega, &s), WeakIrreducibility::Fails { alpha: 0, beta: 1 });
        let m = grillet_monoid(&omega, &s).unwrap();
        assert!(!subdirectly_irreducible(&m, Quasivariety::CommutativeTriviallyOrdered).unwrap().is_si());
    }

    #[test]
    fn truncations_are_confirmed() {
        for d in [2, 3] {
            for g in [trivial(), cyclic(2).unwrap()] {
                let omega = Nilsemigroup::truncation(d).unwrap();
                let s = FactorSet::trivial(&omega, &g).unwrap();
                let verdict = thm64_spotcheck(&omega, &s).unwrap();
                assert!(matches!(verdict, Spotcheck::Confirmed { .. }), "d={d} |G|={}: {verdict:?}", g.size());
            }
        }
    }

    #[test]
    fn cyclic_prime_powers() {
        let omega = Nilsemigroup::trivial();
        for c in [4, 8, 9] {
            let s = FactorSet::trivial(&omega, &cyclic(c).unwrap()).unwrap();
            assert!(matches!(thm64_spotcheck(&omega, &s).unwrap(), Spotcheck::Confirmed { .. }));
        }
        let s = FactorSet::trivial(&omega, &cyclic(6).unwrap()).unwrap();
        assert!(matches!(thm64_spotcheck(&omega, &s).unwrap(), Spotcheck::Inapplicable(_)));
        assert!(subdirectly_irreducible(&cyclic(4).unwrap(), Quasivariety::CommutativeTriviallyOrdered).unwrap().is_si());
    }

    #[test]
    fn coboundaries_give_isomorphic_monoids() {
        let omega = Nilsemigroup::truncation(3).unwrap();
        let g = cyclic(2).unwrap();
        let s = FactorSet::trivial(&omega, &g).unwrap();
        let base = grillet_monoid(&omega, &s).unwrap();
        for u in (0..3).map(|_| 0..2usize).multi_cartesian_product() {
            let mut u = u;
            u.push(0);
            let t = s.coboundary(&omega, &u).unwrap();
            t.validate(&omega).unwrap();
            assert!(isomorphic(&base, &grillet_monoid(&omega, &t).unwrap()));
        }
    }
}
