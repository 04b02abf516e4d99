//! Finite partially ordered monoids given by explicit tables.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result, Violation};

/// Which of the three orders a builtin carrier is equipped with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    Leq,
    Geq,
    Eq,
}

impl OrderKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "<=" | "le" | "leq" | "≤" => Ok(OrderKind::Leq),
            ">=" | "ge" | "geq" | "≥" => Ok(OrderKind::Geq),
            "=" | "==" | "eq" => Ok(OrderKind::Eq),
            _ => Err(Error::UnknownName(format!("order selector {s:?}"))),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            OrderKind::Leq => "<=",
            OrderKind::Geq => ">=",
            OrderKind::Eq => "=",
        }
    }

    /// Applies the selector to a "natural" comparison `a <= b`.
    fn relate(self, a: usize, b: usize) -> bool {
        match self {
            OrderKind::Leq => a <= b,
            OrderKind::Geq => a >= b,
            OrderKind::Eq => a == b,
        }
    }
}

/// A finite pomonoid `⟨M, 1, ·, ≤⟩` with elements `0..size`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pomonoid {
    names: Vec<String>,
    unit: usize,
    mul: Vec<usize>,
    leq: Vec<bool>,
    /// Absorbing "too large" element of a truncated carrier such as `ℕ_T`.
    saturation: Option<usize>,
}

impl Pomonoid {
    /// Builds and validates a pomonoid from row-major tables.
    pub fn new(names: Vec<String>, unit: usize, mul: Vec<usize>, leq: Vec<bool>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Malformed("a monoid needs at least one element".into()));
        }
        if mul.len() != n * n || leq.len() != n * n {
            return Err(Error::Malformed(format!(
                "tables of size {} and {} for {n} elements",
                mul.len(),
                leq.len()
            )));
        }
        if unit >= n {
            return Err(Error::Range(format!("unit {unit} not below {n}")));
        }
        if let Some(&bad) = mul.iter().find(|&&v| v >= n) {
            return Err(Error::Range(format!("table entry {bad} not below {n}")));
        }
        let distinct: BTreeSet<&String> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::Malformed("duplicate element names".into()));
        }
        let m = Pomonoid {
            names,
            unit,
            mul,
            leq,
            saturation: None,
        };
        m.check_axioms()?;
        Ok(m)
    }

    /// Like [`Pomonoid::new`] with generated names `0..n`.
    pub fn from_tables(unit: usize, mul: Vec<usize>, leq: Vec<bool>) -> Result<Self> {
        let n = (mul.len() as f64).sqrt() as usize;
        Pomonoid::new((0..n).map(|i| i.to_string()).collect(), unit, mul, leq)
    }

    /// Skips validation; for tables produced by constructions that are
    /// correct by design.
    pub(crate) fn raw(names: Vec<String>, unit: usize, mul: Vec<usize>, leq: Vec<bool>) -> Self {
        debug_assert_eq!(mul.len(), names.len() * names.len());
        Pomonoid {
            names,
            unit,
            mul,
            leq,
            saturation: None,
        }
    }

    pub(crate) fn with_saturation(mut self, s: usize) -> Self {
        self.saturation = Some(s);
        self
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size() + b]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn mul_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn leq_table(&self) -> &[bool] {
        &self.leq
    }

    pub fn saturation(&self) -> Option<usize> {
        self.saturation
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownName(format!("element {name:?}")))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    /// Product of a sequence; the empty product is the unit.
    pub fn product<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.unit, |acc, x| self.mul(acc, x))
    }

    /// First violated pomonoid axiom, if any.
    pub fn check_axioms(&self) -> Result<(), Violation> {
        let n = self.size();
        let nm = |a: usize| self.names[a].clone();
        for a in 0..n {
            if self.mul(self.unit, a) != a || self.mul(a, self.unit) != a {
                return Err(Violation::new("unit is two-sided", vec![nm(a)]));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Violation::new("associativity", vec![nm(a), nm(b), nm(c)]));
                    }
                }
            }
        }
        if let Some(v) = check_partial_order(n, &self.leq) {
            return Err(Violation::new(v.0, v.1.into_iter().map(nm).collect()));
        }
        for a in 0..n {
            for b in 0..n {
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if !self.leq(self.mul(a, c), self.mul(b, c)) || !self.leq(self.mul(c, a), self.mul(c, b)) {
                        return Err(Violation::new("order compatible with multiplication", vec![nm(a), nm(b), nm(c)]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_trivially_ordered(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.leq(a, b) == (a == b)))
    }

    /// The same monoid under the equality order.
    pub fn trivially_ordered(&self) -> Pomonoid {
        let n = self.size();
        let mut m = self.clone();
        m.leq = (0..n * n).map(|i| i / n == i % n).collect();
        m
    }

    /// The same monoid under the reversed order.
    pub fn dual_order(&self) -> Pomonoid {
        let n = self.size();
        let mut m = self.clone();
        m.leq = (0..n * n).map(|i| self.leq[(i % n) * n + i / n]).collect();
        m
    }

    /// A copy with a different (validated) order.
    pub fn with_order(&self, leq: Vec<bool>) -> Result<Pomonoid> {
        let mut m = self.clone();
        m.leq = leq;
        m.check_axioms()?;
        Ok(m)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.elements().find(|&b| self.elements().all(|x| self.leq(b, x)))
    }

    pub fn top(&self) -> Option<usize> {
        self.elements().find(|&t| self.elements().all(|x| self.leq(x, t)))
    }

    /// Greatest lower bound of two elements, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = self.elements().filter(|&x| self.leq(x, a) && self.leq(x, b)).collect();
        lower.iter().copied().find(|&g| lower.iter().all(|&x| self.leq(x, g)))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let upper: Vec<usize> = self.elements().filter(|&x| self.leq(a, x) && self.leq(b, x)).collect();
        upper.iter().copied().find(|&l| upper.iter().all(|&x| self.leq(l, x)))
    }

    /// `xz = yz ⟹ x = y` and `zx = zy ⟹ x = y` for all `x, y`.
    pub fn is_cancellative(&self, u: usize) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| {
                x == y || (self.mul(x, u) != self.mul(y, u) && self.mul(u, x) != self.mul(u, y))
            })
        })
    }

    /// `xu ≤ yu ⟹ x ≤ y` for all `x, y`.
    pub fn is_right_order_cancellative(&self, u: usize) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| !self.leq(self.mul(x, u), self.mul(y, u)) || self.leq(x, y)))
    }

    pub fn inverse_of(&self, u: usize) -> Option<usize> {
        self.elements()
            .find(|&v| self.mul(u, v) == self.unit && self.mul(v, u) == self.unit)
    }

    pub fn is_invertible(&self, u: usize) -> bool {
        self.inverse_of(u).is_some()
    }

    pub fn is_idempotent(&self, u: usize) -> bool {
        self.mul(u, u) == u
    }

    pub fn element_predicates(&self, u: usize) -> ElementPredicates {
        ElementPredicates {
            cancellative: self.is_cancellative(u),
            right_order_cancellative: self.is_right_order_cancellative(u),
            invertible: self.is_invertible(u),
            idempotent: self.is_idempotent(u),
        }
    }

    /// Least submonoid containing `gens`, with its inclusion map (sorted).
    pub fn submonoid_generated(&self, gens: &[usize]) -> (Pomonoid, Vec<usize>) {
        let mut inside = vec![false; self.size()];
        let mut members = vec![self.unit];
        inside[self.unit] = true;
        for &g in gens {
            if !inside[g] {
                inside[g] = true;
                members.push(g);
            }
        }
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            let mut j = 0;
            while j < members.len() {
                let b = members[j];
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        members.sort_unstable();
        (self.induced(&members), members)
    }

    /// The substructure on a multiplicatively closed set containing 1.
    pub(crate) fn induced(&self, members: &[usize]) -> Pomonoid {
        let k = members.len();
        let mut pos = vec![usize::MAX; self.size()];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let mut mul = Vec::with_capacity(k * k);
        let mut leq = Vec::with_capacity(k * k);
        for &a in members {
            for &b in members {
                mul.push(pos[self.mul(a, b)]);
                leq.push(self.leq(a, b));
            }
        }
        let names = members.iter().map(|&x| self.names[x].clone()).collect();
        let mut m = Pomonoid::raw(names, pos[self.unit], mul, leq);
        m.saturation = self.saturation.filter(|&s| pos[s] != usize::MAX).map(|s| pos[s]);
        m
    }

    /// Whether two pomonoids are identical up to element names.
    pub fn same_tables(&self, other: &Pomonoid) -> bool {
        self.unit == other.unit && self.mul == other.mul && self.leq == other.leq
    }
}

/// Returns the first failing partial-order axiom with witness indices.
pub(crate) fn check_partial_order(n: usize, leq: &[bool]) -> Option<(&'static str, Vec<usize>)> {
    for a in 0..n {
        if !leq[a * n + a] {
            return Some(("order is reflexive", vec![a]));
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && leq[a * n + b] && leq[b * n + a] {
                return Some(("order is antisymmetric", vec![a, b]));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if !leq[a * n + b] {
                continue;
            }
            for c in 0..n {
                if leq[b * n + c] && !leq[a * n + c] {
                    return Some(("order is transitive", vec![a, b, c]));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementPredicates {
    pub cancellative: bool,
    pub right_order_cancellative: bool,
    pub invertible: bool,
    pub idempotent: bool,
}

impl fmt::Debug for Pomonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        write!(f, "Pomonoid[{n}; unit {}]", self.names[self.unit])?;
        for a in 0..n {
            write!(f, "\n  {}:", self.names[a])?;
            for b in 0..n {
                write!(f, " {}", self.names[self.mul(a, b)])?;
            }
        }
        let strict: Vec<String> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.lt(a, b))
            .map(|(a, b)| format!("{}<{}", self.names[a], self.names[b]))
            .collect();
        write!(f, "\n  order: {}", strict.join(" "))
    }
}

// --- named carriers -------------------------------------------------------

fn discrete(n: usize) -> Vec<bool> {
    (0..n * n).map(|i| i / n == i % n).collect()
}

/// The one-element pomonoid.
pub fn trivial() -> Pomonoid {
    Pomonoid::raw(vec!["1".into()], 0, vec![0], vec![true])
}

/// `ℤ/c` written additively, trivially ordered.
pub fn cyclic(c: usize) -> Result<Pomonoid> {
    if c == 0 {
        return Err(Error::Range("cyclic group of order 0".into()));
    }
    let mul = (0..c * c).map(|i| (i / c + i % c) % c).collect();
    Ok(Pomonoid::raw((0..c).map(|i| i.to_string()).collect(), 0, mul, discrete(c)))
}

/// The two-element chain `{1, a}` with `a·a = a` and `a ≤ 1`, i.e. the
/// meet-semilattice `⟨2, ⊤, ∧, ≤⟩`.
pub fn chain2() -> Pomonoid {
    Pomonoid::raw(
        vec!["1".into(), "a".into()],
        0,
        vec![0, 1, 1, 1],
        vec![true, false, true, true],
    )
}

/// `⟨{0,1}, 1, ∧⟩` with the chosen order on `0 < 1`.
pub fn boolean_and(order: OrderKind) -> Pomonoid {
    let mul = vec![0, 0, 0, 1];
    let leq = (0..4).map(|i| order.relate(i / 2, i % 2)).collect();
    Pomonoid::raw(vec!["0".into(), "1".into()], 1, mul, leq)
}

/// `⟨{0,1}, 0, ∨⟩` with the chosen order on `0 < 1`.
pub fn boolean_or(order: OrderKind) -> Pomonoid {
    let mul = vec![0, 1, 1, 1];
    let leq = (0..4).map(|i| order.relate(i / 2, i % 2)).collect();
    Pomonoid::raw(vec!["0".into(), "1".into()], 0, mul, leq)
}

/// Names of the truncated naturals `0, 1, .., T-1, T+`.
fn nat_names(t: usize) -> Vec<String> {
    (0..=t)
        .map(|i| if i == t { format!("{t}+") } else { i.to_string() })
        .collect()
}

/// `⟨ℕ_T, 0, +⟩`: naturals with saturating addition, the top element `T+`
/// standing for every value `≥ T`.
pub fn nat_add(t: usize, order: OrderKind) -> Result<Pomonoid> {
    if t < 2 {
        return Err(Error::Config(format!("nat threshold {t} must be at least 2")));
    }
    let n = t + 1;
    let mul = (0..n * n).map(|i| (i / n + i % n).min(t)).collect();
    let leq = (0..n * n).map(|i| order.relate(i / n, i % n)).collect();
    Ok(Pomonoid::raw(nat_names(t), 0, mul, leq).with_saturation(t))
}

/// `⟨ℕ_T, 1, ·⟩` with saturating multiplication.
pub fn nat_mul(t: usize, order: OrderKind) -> Result<Pomonoid> {
    if t < 2 {
        return Err(Error::Config(format!("nat threshold {t} must be at least 2")));
    }
    let n = t + 1;
    let mul = (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            if a == 0 || b == 0 {
                0
            } else {
                (a * b).min(t)
            }
        })
        .collect();
    let leq = (0..n * n).map(|i| order.relate(i / n, i % n)).collect();
    Ok(Pomonoid::raw(nat_names(t), 1, mul, leq).with_saturation(t))
}

/// Componentwise product; the empty product is the trivial pomonoid.
/// Elements are enumerated in lexicographic order of coordinates.
pub fn direct_product(factors: &[&Pomonoid], cap: usize) -> Result<Pomonoid> {
    let mut size: usize = 1;
    for f in factors {
        size = size.saturating_mul(f.size());
        if size > cap {
            return Err(Error::Cap {
                what: "direct product".into(),
                size,
                cap,
            });
        }
    }
    let coords = |mut i: usize| -> Vec<usize> {
        let mut c = vec![0; factors.len()];
        for (slot, f) in c.iter_mut().zip(factors).rev() {
            *slot = i % f.size();
            i /= f.size();
        }
        c
    };
    let index = |c: &[usize]| c.iter().zip(factors).fold(0, |acc, (&x, f)| acc * f.size() + x);
    let all: Vec<Vec<usize>> = (0..size).map(coords).collect();
    let mut mul = Vec::with_capacity(size * size);
    let mut leq = Vec::with_capacity(size * size);
    for a in &all {
        for b in &all {
            let p: Vec<usize> = factors.iter().enumerate().map(|(i, f)| f.mul(a[i], b[i])).collect();
            mul.push(index(&p));
            leq.push(factors.iter().enumerate().all(|(i, f)| f.leq(a[i], b[i])));
        }
    }
    let names = all
        .iter()
        .map(|c| {
            if factors.is_empty() {
                "1".to_string()
            } else {
                let parts: Vec<&str> = c.iter().zip(factors).map(|(&x, f)| f.name(x)).collect();
                format!("({})", parts.join(","))
            }
        })
        .collect();
    let unit: Vec<usize> = factors.iter().map(|f| f.unit()).collect();
    Ok(Pomonoid::raw(names, index(&unit), mul, leq))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_carriers_validate() {
        for m in [
            trivial(),
            cyclic(2).unwrap(),
            cyclic(5).unwrap(),
            chain2(),
            boolean_and(OrderKind::Leq),
            boolean_and(OrderKind::Geq),
            boolean_and(OrderKind::Eq),
            boolean_or(OrderKind::Leq),
            nat_add(9, OrderKind::Leq).unwrap(),
            nat_add(9, OrderKind::Geq).unwrap(),
            nat_mul(9, OrderKind::Leq).unwrap(),
        ] {
            m.check_axioms().unwrap();
        }
    }

    #[test]
    fn non_associative_table_is_reported() {
        // unit 0; 1·1 = 0 is fine, so break it with a 3-element table
        let mul = vec![0, 1, 2, 1, 2, 2, 2, 2, 1];
        let err = Pomonoid::from_tables(0, mul, discrete(3)).unwrap_err();
        match err {
            Error::Axiom(v) => {
                assert_eq!(v.axiom, "associativity");
                assert_eq!(v.witness.len(), 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        // 2-element: unit 0, 1·1 = 1 with non-unit row fails the unit law
        assert!(Pomonoid::from_tables(0, vec![0, 1, 0, 1], discrete(2)).is_err());
    }

    #[test]
    fn incompatible_order_is_reported() {
        // ℤ/2 with 0 ≤ 1: adding 1 gives 1 ≤ 0
        let err = cyclic(2).unwrap().with_order(vec![true, true, false, true]).unwrap_err();
        assert!(matches!(err, Error::Axiom(_)));
    }

    #[test]
    fn products() {
        let z2 = cyclic(2).unwrap();
        let klein = direct_product(&[&z2, &z2], 64).unwrap();
        assert_eq!(klein.size(), 4);
        klein.check_axioms().unwrap();
        assert!(klein.is_trivially_ordered());
        assert!(klein.elements().all(|x| klein.mul(x, x) == klein.unit()));
        let empty = direct_product(&[], 64).unwrap();
        assert_eq!(empty.size(), 1);
        let c = chain2();
        let sq = direct_product(&[&c, &c], 64).unwrap();
        sq.check_axioms().unwrap();
        for a in sq.elements() {
            for b in sq.elements() {
                let (a0, a1, b0, b1) = (a / 2, a % 2, b / 2, b % 2);
                assert_eq!(sq.leq(a, b), c.leq(a0, b0) && c.leq(a1, b1));
            }
        }
        assert!(direct_product(&[&z2, &z2, &z2], 7).is_err());
    }

    #[test]
    fn generated_submonoids() {
        let z4 = cyclic(4).unwrap();
        assert_eq!(z4.submonoid_generated(&[]).1, vec![0]);
        assert_eq!(z4.submonoid_generated(&[2]).1, vec![0, 2]);
        assert_eq!(chain2().submonoid_generated(&[1]).1, vec![0, 1]);
    }

    #[test]
    fn element_predicates() {
        let c = chain2();
        assert!(c.element_predicates(c.unit()).right_order_cancellative);
        assert!(!c.is_cancellative(1));
        let z5 = cyclic(5).unwrap();
        assert!(z5.elements().all(|x| z5.is_invertible(x)));
        let nat = nat_add(9, OrderKind::Eq).unwrap();
        assert!(!nat.is_invertible(1));
        assert!(nat.is_invertible(0));
    }
}
