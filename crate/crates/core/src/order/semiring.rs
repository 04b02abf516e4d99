//! Finite partially ordered semirings.

use std::sync::Arc;

use crate::error::{Error, Result, Violation};
use crate::order::pomonoid::{self, OrderKind, Pomonoid};

/// `⟨M, 1, ·, 0, +, ≤⟩`: the multiplicative pomonoid plus a commutative
/// additive monoid sharing the order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Semiring {
    mult: Arc<Pomonoid>,
    zero: usize,
    add: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SemiringPredicates {
    pub positive: bool,
    pub negative: bool,
    pub idempotent: bool,
    pub lor: bool,
    pub land: bool,
    pub continuous: bool,
}

impl Semiring {
    pub fn new(mult: Pomonoid, zero: usize, add: Vec<usize>) -> Result<Self> {
        let n = mult.size();
        if add.len() != n * n {
            return Err(Error::Malformed(format!("additive table of size {} for {n} elements", add.len())));
        }
        if zero >= n {
            return Err(Error::Range(format!("zero {zero} not below {n}")));
        }
        if let Some(&bad) = add.iter().find(|&&v| v >= n) {
            return Err(Error::Range(format!("table entry {bad} not below {n}")));
        }
        mult.check_axioms()?;
        let s = Semiring::raw(mult, zero, add);
        s.check_axioms()?;
        Ok(s)
    }

    pub(crate) fn raw(mult: Pomonoid, zero: usize, add: Vec<usize>) -> Self {
        Semiring {
            mult: Arc::new(mult),
            zero,
            add,
        }
    }

    pub fn mult(&self) -> &Pomonoid {
        &self.mult
    }

    pub fn mult_arc(&self) -> Arc<Pomonoid> {
        self.mult.clone()
    }

    pub fn size(&self) -> usize {
        self.mult.size()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.mult.unit()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size() + b]
    }

    pub fn add_table(&self) -> &[usize] {
        &self.add
    }

    pub fn sum<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.zero, |acc, x| self.add(acc, x))
    }

    /// The additive reduct `⟨M, 0, +, ≤⟩` as a pomonoid.
    pub fn additive(&self) -> Pomonoid {
        let m = &self.mult;
        Pomonoid::raw(m.names().to_vec(), self.zero, self.add.clone(), m.leq_table().to_vec())
    }

    /// Checks the posemiring axioms beyond those of the multiplicative
    /// pomonoid.
    pub fn check_axioms(&self) -> Result<(), Violation> {
        let m = &self.mult;
        let n = self.size();
        let nm = |a: usize| m.name(a).to_string();
        let additive = self.additive();
        additive
            .check_axioms()
            .map_err(|v| Violation::new(format!("additive reduct: {}", v.axiom), v.witness))?;
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(Violation::new("addition is commutative", vec![nm(a), nm(b)]));
                }
            }
        }
        for a in 0..n {
            if m.mul(self.zero, a) != self.zero || m.mul(a, self.zero) != self.zero {
                return Err(Violation::new("zero is absorbing", vec![nm(a)]));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let s = self.add(x, y);
                for z in 0..n {
                    if m.mul(s, z) != self.add(m.mul(x, z), m.mul(y, z)) {
                        return Err(Violation::new("right distributivity", vec![nm(x), nm(y), nm(z)]));
                    }
                    if m.mul(z, s) != self.add(m.mul(z, x), m.mul(z, y)) {
                        return Err(Violation::new("left distributivity", vec![nm(x), nm(y), nm(z)]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_idempotent(&self) -> bool {
        (0..self.size()).all(|x| self.add(x, x) == x)
    }

    fn add_is(&self, op: impl Fn(usize, usize) -> Option<usize>) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| op(a, b) == Some(self.add(a, b))))
    }

    pub fn predicates(&self) -> SemiringPredicates {
        let m = &self.mult;
        let positive = m.leq(self.zero, self.one());
        let negative = m.leq(self.one(), self.zero);
        let idempotent = self.is_idempotent();
        let lor = idempotent && self.add_is(|a, b| m.join(a, b));
        let land = idempotent && self.add_is(|a, b| m.meet(a, b));
        // A finite lattice is complete; the infinite distributive laws then
        // reduce to the binary ones (a semiring axiom) plus the empty sum,
        // i.e. the zero being the bottom (∨) or top (∧) and absorbing.
        let lattice = m.bottom().is_some()
            && m.top().is_some()
            && (0..m.size()).all(|a| (0..m.size()).all(|b| m.meet(a, b).is_some() && m.join(a, b).is_some()));
        let empty_sum = if lor {
            m.bottom() == Some(self.zero)
        } else if land {
            m.top() == Some(self.zero)
        } else {
            false
        };
        SemiringPredicates {
            positive,
            negative,
            idempotent,
            lor,
            land,
            continuous: (lor || land) && lattice && empty_sum && self.check_axioms().is_ok(),
        }
    }
}

/// The Boolean semiring `⟨{0,1}, 1, ∧, 0, ∨⟩` under the chosen order.
pub fn boolean(order: OrderKind) -> Semiring {
    Semiring::raw(pomonoid::boolean_and(order), 0, vec![0, 1, 1, 1])
}

/// `ℕ_T` with saturating `+` and `·`, the quotient of `ℕ` collapsing all
/// values `≥ T`.
pub fn nat(t: usize, order: OrderKind) -> Result<Semiring> {
    let mult = pomonoid::nat_mul(t, order)?;
    let n = t + 1;
    let add = (0..n * n).map(|i| (i / n + i % n).min(t)).collect();
    Ok(Semiring::raw(mult, 0, add))
}
