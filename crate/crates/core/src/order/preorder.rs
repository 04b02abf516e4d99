//! Invariant preorders, quotients and subdirect irreducibility.
//!
//! Relations are stored as one `u64` row per element, so carriers are
//! limited to 64 elements here.

use crate::error::{Error, Result};
use crate::order::pomonoid::Pomonoid;

pub const MAX_PREORDER_CARRIER: usize = 64;

/// Classes of pomonoids relative to which irreducibility is decided.
///
/// A preorder is a `Q`-preorder when the quotient lies in `Q`; each class
/// below is axiomatized by quasi-inequalities, so `Q`-preorders are closed
/// under intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quasivariety {
    All,
    TriviallyOrdered,
    Commutative,
    CommutativeTriviallyOrdered,
}

impl Quasivariety {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Quasivariety::All),
            "trivially-ordered" | "unordered" => Ok(Quasivariety::TriviallyOrdered),
            "commutative" => Ok(Quasivariety::Commutative),
            "commutative-trivially-ordered" | "commutative-unordered" => {
                Ok(Quasivariety::CommutativeTriviallyOrdered)
            }
            _ => Err(Error::UnknownName(format!("quasivariety {s:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Quasivariety::All => "all",
            Quasivariety::TriviallyOrdered => "trivially-ordered",
            Quasivariety::Commutative => "commutative",
            Quasivariety::CommutativeTriviallyOrdered => "commutative-trivially-ordered",
        }
    }

    fn symmetric(self) -> bool {
        matches!(self, Quasivariety::TriviallyOrdered | Quasivariety::CommutativeTriviallyOrdered)
    }

    fn commutative(self) -> bool {
        matches!(self, Quasivariety::Commutative | Quasivariety::CommutativeTriviallyOrdered)
    }

    pub fn contains(self, m: &Pomonoid) -> bool {
        (!self.symmetric() || m.is_trivially_ordered()) && (!self.commutative() || m.is_commutative())
    }
}

/// A binary relation on `0..n`, row `a` holding the set `{b : a ⪯ b}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    rows: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_PREORDER_CARRIER);
        Relation { rows: vec![0; n] }
    }

    pub fn from_rows(rows: Vec<u64>) -> Self {
        Relation { rows }
    }

    pub fn of_order(m: &Pomonoid) -> Self {
        let mut r = Relation::empty(m.size());
        for a in m.elements() {
            for b in m.elements() {
                if m.leq(a, b) {
                    r.insert(a, b);
                }
            }
        }
        r
    }

    pub fn total(n: usize) -> Self {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Relation { rows: vec![full; n] }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    pub fn insert(&mut self, a: usize, b: usize) -> bool {
        let fresh = !self.contains(a, b);
        self.rows[a] |= 1 << b;
        fresh
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn intersect(&self, other: &Relation) -> Relation {
        Relation {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn pair_count(&self) -> u32 {
        self.rows.iter().map(|r| r.count_ones()).sum()
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.contains(a, b)).map(move |b| (a, b)))
    }

    pub fn is_preorder(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| self.contains(a, a))
            && self
                .pairs()
                .all(|(a, b)| self.rows[b] & !self.rows[a] == 0)
    }

    /// Whether multiplication is monotone in both arguments.
    pub fn is_invariant_for(&self, m: &Pomonoid) -> bool {
        self.pairs().all(|(a, b)| {
            m.elements()
                .all(|z| self.contains(m.mul(a, z), m.mul(b, z)) && self.contains(m.mul(z, a), m.mul(z, b)))
        })
    }

    /// Whether the quotient by this invariant preorder lies in `q`.
    pub fn quotient_in(&self, m: &Pomonoid, q: Quasivariety) -> bool {
        if q.symmetric() && !self.pairs().all(|(a, b)| self.contains(b, a)) {
            return false;
        }
        if q.commutative() {
            for a in m.elements() {
                for b in m.elements() {
                    if !self.contains(m.mul(a, b), m.mul(b, a)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// The least `q`-preorder on `m` containing the order of `m` and `pairs`,
/// computed as a saturation fixpoint.
pub fn least_q_preorder(m: &Pomonoid, pairs: &[(usize, usize)], q: Quasivariety) -> Result<Relation> {
    let n = m.size();
    if n > MAX_PREORDER_CARRIER {
        return Err(Error::Cap {
            what: "preorder carrier".into(),
            size: n,
            cap: MAX_PREORDER_CARRIER,
        });
    }
    let mut rel = Relation::empty(n);
    let mut queue = Vec::new();
    let push = |rel: &mut Relation, queue: &mut Vec<(usize, usize)>, a: usize, b: usize| {
        if rel.insert(a, b) {
            queue.push((a, b));
        }
    };
    for a in 0..n {
        for b in 0..n {
            if m.leq(a, b) {
                push(&mut rel, &mut queue, a, b);
            }
        }
    }
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(Error::Range(format!("pair ({a},{b}) outside a carrier of size {n}")));
        }
        push(&mut rel, &mut queue, a, b);
    }
    if q.commutative() {
        for a in 0..n {
            for b in 0..n {
                push(&mut rel, &mut queue, m.mul(a, b), m.mul(b, a));
            }
        }
    }
    while let Some((a, b)) = queue.pop() {
        if q.symmetric() {
            push(&mut rel, &mut queue, b, a);
        }
        for z in 0..n {
            push(&mut rel, &mut queue, m.mul(a, z), m.mul(b, z));
            push(&mut rel, &mut queue, m.mul(z, a), m.mul(z, b));
        }
        // transitivity against everything already present
        for w in 0..n {
            if rel.contains(w, a) {
                push(&mut rel, &mut queue, w, b);
            }
        }
        let mut above = rel.rows[b];
        while above != 0 {
            let v = above.trailing_zeros() as usize;
            above &= above - 1;
            push(&mut rel, &mut queue, a, v);
        }
    }
    Ok(rel)
}

/// The least invariant preorder containing the order and `pairs`.
pub fn least_invariant_preorder(m: &Pomonoid, pairs: &[(usize, usize)]) -> Result<Relation> {
    least_q_preorder(m, pairs, Quasivariety::All)
}

/// `M/⪯` with its quotient map. Classes are numbered by their least
/// element, so the construction is deterministic.
pub fn quotient(m: &Pomonoid, p: &Relation) -> Result<(Pomonoid, Vec<usize>)> {
    if p.size() != m.size() || !p.is_preorder() || !p.is_invariant_for(m) || !Relation::of_order(m).is_subset(p) {
        return Err(Error::Precondition("quotient needs an invariant preorder extending the order".into()));
    }
    let n = m.size();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if class[a] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(a);
        for b in a..n {
            if p.contains(a, b) && p.contains(b, a) {
                class[b] = id;
            }
        }
    }
    let k = reps.len();
    let mut mul = Vec::with_capacity(k * k);
    let mut leq = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            mul.push(class[m.mul(a, b)]);
            leq.push(p.contains(a, b));
        }
    }
    let names = reps
        .iter()
        .map(|&r| {
            let members: Vec<&str> = (0..n).filter(|&x| class[x] == class[r]).map(|x| m.name(x)).collect();
            if members.len() == 1 {
                members[0].to_string()
            } else {
                format!("[{}]", members.join("~"))
            }
        })
        .collect();
    Ok((Pomonoid::raw(names, class[m.unit()], mul, leq), class))
}

/// The order kernel `{(a, b) : φ(a) ≤ φ(b)}` of a map into `target`.
pub fn order_kernel(source_size: usize, map: &[usize], target: &Pomonoid) -> Relation {
    let mut r = Relation::empty(source_size);
    for a in 0..source_size {
        for b in 0..source_size {
            if target.leq(map[a], map[b]) {
                r.insert(a, b);
            }
        }
    }
    r
}

/// Outcome of the irreducibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SiVerdict {
    /// The least proper extension is generated by `monolith`.
    Irreducible { monolith: (usize, usize), extension: Relation },
    /// Principal extensions whose intersection is the base preorder, with
    /// the sizes of the corresponding quotients.
    Reducible { separating: Vec<((usize, usize), Relation, usize)> },
    /// No proper extension exists (the trivial pomonoid).
    Trivial,
}

impl SiVerdict {
    pub fn is_si(&self) -> bool {
        matches!(self, SiVerdict::Irreducible { .. })
    }
}

/// Decides subdirect irreducibility relative to `q` by intersecting all
/// principal proper `q`-extensions of the order.
pub fn subdirectly_irreducible(m: &Pomonoid, q: Quasivariety) -> Result<SiVerdict> {
    if !q.contains(m) {
        return Err(Error::Precondition(format!(
            "pomonoid does not lie in the quasivariety {}",
            q.name()
        )));
    }
    let n = m.size();
    let base = least_q_preorder(m, &[], q)?;
    let mut principal: Vec<((usize, usize), Relation)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if !base.contains(a, b) {
                principal.push(((a, b), least_q_preorder(m, &[(a, b)], q)?));
            }
        }
    }
    if principal.is_empty() {
        return Ok(SiVerdict::Trivial);
    }
    let meet = principal
        .iter()
        .skip(1)
        .fold(principal[0].1.clone(), |acc, (_, r)| acc.intersect(r));
    if meet != base {
        let monolith = meet
            .pairs()
            .find(|&(a, b)| !base.contains(a, b))
            .expect("proper meet has a new pair");
        return Ok(SiVerdict::Irreducible {
            monolith,
            extension: meet,
        });
    }
    // keep the minimal principal extensions, then pick greedily
    let minimal: Vec<&((usize, usize), Relation)> = principal
        .iter()
        .filter(|(_, r)| !principal.iter().any(|(_, s)| s != r && s.is_subset(r)))
        .collect();
    let mut chosen: Vec<((usize, usize), Relation, usize)> = Vec::new();
    let mut acc: Option<Relation> = None;
    let mut seen: Vec<&Relation> = Vec::new();
    for (pair, r) in minimal {
        if seen.contains(&r) {
            continue;
        }
        seen.push(r);
        let next = match &acc {
            None => r.clone(),
            Some(a) => a.intersect(r),
        };
        if acc.as_ref() != Some(&next) {
            let size = quotient(m, r)?.0.size();
            chosen.push((*pair, r.clone(), size));
            acc = Some(next);
        }
        if acc.as_ref() == Some(&base) {
            break;
        }
    }
    Ok(SiVerdict::Reducible { separating: chosen })
}

/// Every preorder on `0..n`, in a fixed order. Intended for `n ≤ 5`
/// (4231 preorders) as a brute-force oracle.
pub fn all_preorders(n: usize) -> Vec<Relation> {
    assert!(n <= 6, "preorder enumeration is only meant for tiny carriers");
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    let mut rel = Relation::empty(n);
    for a in 0..n {
        rel.insert(a, a);
    }
    fn go(i: usize, off: &[(usize, usize)], rel: &mut Relation, out: &mut Vec<Relation>) {
        if i == off.len() {
            if rel.is_preorder() {
                out.push(rel.clone());
            }
            return;
        }
        let (a, b) = off[i];
        go(i + 1, off, rel, out);
        rel.rows[a] |= 1 << b;
        if consistent_prefix(rel, off, i) {
            go(i + 1, off, rel, out);
        }
        rel.rows[a] &= !(1 << b);
    }
    go(0, &off, &mut rel, &mut out);
    out
}

/// Rejects a partial assignment if some decided triple already breaks
/// transitivity.
fn consistent_prefix(rel: &Relation, off: &[(usize, usize)], upto: usize) -> bool {
    let n = rel.size();
    let decided = |x: usize, y: usize| -> bool {
        x == y || off.iter().take(upto + 1).any(|&p| p == (x, y))
    };
    let (a, b) = off[upto];
    for x in 0..n {
        // x ⪯ a ⪯ b  ⇒  x ⪯ b
        if rel.contains(x, a) && decided(x, b) && !rel.contains(x, b) {
            return false;
        }
        // a ⪯ b ⪯ x  ⇒  a ⪯ x
        if rel.contains(b, x) && decided(a, x) && !rel.contains(a, x) {
            return false;
        }
    }
    true
}

/// Brute-force irreducibility: filter all preorders for invariance, the
/// order and `q`, then look for a least proper one.
pub fn si_oracle(m: &Pomonoid, q: Quasivariety, preorders: &[Relation]) -> bool {
    let base = Relation::of_order(m);
    let proper: Vec<&Relation> = preorders
        .iter()
        .filter(|r| r.size() == m.size() && base.is_subset(r) && **r != base)
        .filter(|r| r.is_invariant_for(m) && r.quotient_in(m, q))
        .collect();
    proper
        .iter()
        .any(|r| proper.iter().all(|s| r.is_subset(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::pomonoid::{chain2, cyclic, direct_product};

    #[test]
    fn saturation_examples() {
        let z2 = cyclic(2).unwrap();
        assert_eq!(least_invariant_preorder(&z2, &[]).unwrap(), Relation::of_order(&z2));
        assert_eq!(least_invariant_preorder(&z2, &[(0, 1)]).unwrap(), Relation::total(2));
        let c = chain2();
        // 1 ⪯ a on top of a ≤ 1 collapses the chain
        assert_eq!(least_invariant_preorder(&c, &[(0, 1)]).unwrap(), Relation::total(2));
    }

    #[test]
    fn quotient_examples() {
        let z4 = cyclic(4).unwrap();
        let id = Relation::of_order(&z4);
        let (q, _) = quotient(&z4, &id).unwrap();
        assert!(q.same_tables(&z4));
        let p = least_invariant_preorder(&z4, &[(0, 2), (2, 0)]).unwrap();
        let (q, map) = quotient(&z4, &p).unwrap();
        assert_eq!(q.size(), 2);
        assert!(q.same_tables(&cyclic(2).unwrap()));
        assert_eq!(order_kernel(4, &map, &q), p);
        let (t, _) = quotient(&z4, &Relation::total(4)).unwrap();
        assert_eq!(t.size(), 1);
    }

    #[test]
    fn si_examples() {
        let z4 = cyclic(4).unwrap();
        match subdirectly_irreducible(&z4, Quasivariety::All).unwrap() {
            SiVerdict::Irreducible { monolith, .. } => assert_eq!(monolith, (0, 2)),
            v => panic!("{v:?}"),
        }
        let z6 = cyclic(6).unwrap();
        match subdirectly_irreducible(&z6, Quasivariety::All).unwrap() {
            SiVerdict::Reducible { separating } => {
                let sizes: Vec<usize> = separating.iter().map(|s| s.2).collect();
                assert_eq!(sizes, vec![2, 3]);
            }
            v => panic!("{v:?}"),
        }
        assert!(subdirectly_irreducible(&chain2(), Quasivariety::All).unwrap().is_si());
        let triv = crate::order::pomonoid::trivial();
        assert_eq!(subdirectly_irreducible(&triv, Quasivariety::All).unwrap(), SiVerdict::Trivial);
    }

    #[test]
    fn preorder_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| all_preorders(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
    }

    #[test]
    fn least_preorder_is_the_meet_of_invariant_preorders() {
        let all = all_preorders(4);
        let z2 = cyclic(2).unwrap();
        let c = chain2();
        let m = direct_product(&[&z2, &c], 64).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let least = least_invariant_preorder(&m, &[(a, b)]).unwrap();
                let base = Relation::of_order(&m);
                let meet = all
                    .iter()
                    .filter(|r| base.is_subset(r) && r.contains(a, b) && r.is_invariant_for(&m))
                    .fold(Relation::total(4), |acc, r| acc.intersect(r));
                assert_eq!(least, meet);
            }
        }
    }
}
