//! Weight functions `w: B^k → M` and the coclone operations on them.

use std::fmt;
use std::sync::Arc;

use crate::config::BaseSet;
use crate::error::{Error, Result};
use crate::order::pomonoid::{self, Pomonoid};
use crate::order::{MonoidHom, OrderKind, Semiring};
use crate::tuple;

/// The structure a weight takes values in. Preservation only ever looks at
/// the multiplicative pomonoid; the additive part is needed for `w⁺`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Target {
    Monoid(Arc<Pomonoid>),
    Semiring(Arc<Semiring>),
}

impl Target {
    pub fn pomonoid(&self) -> &Pomonoid {
        match self {
            Target::Monoid(m) => m,
            Target::Semiring(s) => s.mult(),
        }
    }

    pub fn semiring(&self) -> Option<&Semiring> {
        match self {
            Target::Monoid(_) => None,
            Target::Semiring(s) => Some(s),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weight {
    base: BaseSet,
    arity: usize,
    target: Target,
    values: Vec<usize>,
}

impl Weight {
    pub fn new(base: BaseSet, arity: usize, target: Target, values: Vec<usize>) -> Result<Self> {
        let expected = base.tuples(arity);
        if values.len() != expected {
            return Err(Error::Shape(format!(
                "{} values for a {arity}-ary weight over a base of size {} (need {expected})",
                values.len(),
                base.size()
            )));
        }
        let size = target.pomonoid().size();
        if let Some(&bad) = values.iter().find(|&&v| v >= size) {
            return Err(Error::Range(format!("value {bad} outside a target of size {size}")));
        }
        Ok(Weight {
            base,
            arity,
            target,
            values,
        })
    }

    pub fn into_monoid(base: BaseSet, arity: usize, m: Pomonoid, values: Vec<usize>) -> Result<Self> {
        Weight::new(base, arity, Target::Monoid(Arc::new(m)), values)
    }

    pub fn into_semiring(base: BaseSet, arity: usize, s: Semiring, values: Vec<usize>) -> Result<Self> {
        Weight::new(base, arity, Target::Semiring(Arc::new(s)), values)
    }

    /// Tabulates `f` over all tuples of `B^arity`.
    pub fn from_fn(base: BaseSet, arity: usize, target: Target, f: impl Fn(&[usize]) -> usize) -> Result<Self> {
        let values = (0..base.tuples(arity))
            .map(|c| f(&tuple::decode(base.size(), arity, c)))
            .collect();
        Weight::new(base, arity, target, values)
    }

    pub fn base(&self) -> BaseSet {
        self.base
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn target(&self) -> &Target {
        &self.target
    }

    pub fn pomonoid(&self) -> &Pomonoid {
        self.target.pomonoid()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn value(&self, code: usize) -> usize {
        self.values[code]
    }

    pub fn value_of(&self, digits: &[usize]) -> usize {
        self.values[tuple::encode(self.base.size(), digits)]
    }

    /// Sorted distinct values.
    pub fn range(&self) -> Vec<usize> {
        let mut r = self.values.clone();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// `w ∘ ρ̃: B^{k'} → M` with `ρ̃(x) = (x^{ρ(0)}, .., x^{ρ(k-1)})`.
    pub fn substitute(&self, rho: &[usize], new_arity: usize) -> Result<Weight> {
        if rho.len() != self.arity {
            return Err(Error::Shape(format!(
                "substitution of length {} for a {}-ary weight",
                rho.len(),
                self.arity
            )));
        }
        if let Some(&bad) = rho.iter().find(|&&r| r >= new_arity) {
            return Err(Error::Range(format!("variable {bad} not below the new arity {new_arity}")));
        }
        let b = self.base.size();
        Weight::from_fn(self.base, new_arity, self.target.clone(), |x| {
            let picked: Vec<usize> = rho.iter().map(|&r| x[r]).collect();
            self.values[tuple::encode(b, &picked)]
        })
    }

    /// `φ ∘ w`.
    pub fn map_hom(&self, phi: &MonoidHom) -> Result<Weight> {
        if !phi.source().same_tables(self.pomonoid()) {
            return Err(Error::Shape("homomorphism source differs from the weight's target".into()));
        }
        Weight::new(
            self.base,
            self.arity,
            Target::Monoid(phi.target().clone()),
            self.values.iter().map(|&v| phi.apply(v)).collect(),
        )
    }

    /// The same values reconsidered in the range-generated submonoid.
    pub fn restrict_range(&self) -> Weight {
        let (sub, members) = self.pomonoid().submonoid_generated(&self.range());
        let values = self
            .values
            .iter()
            .map(|v| members.binary_search(v).expect("values lie in the generated submonoid"))
            .collect();
        Weight {
            base: self.base,
            arity: self.arity,
            target: Target::Monoid(Arc::new(sub)),
            values,
        }
    }

    /// The same values under a different order on the multiplicative
    /// pomonoid (`Eq` gives the trivially ordered variant).
    pub fn reorder(&self, kind: OrderKind) -> Result<Weight> {
        let m = self.pomonoid();
        let m = match kind {
            OrderKind::Leq => m.clone(),
            OrderKind::Geq => m.dual_order(),
            OrderKind::Eq => m.trivially_ordered(),
        };
        Weight::new(self.base, self.arity, Target::Monoid(Arc::new(m)), self.values.clone())
    }

    /// `w⁺` iterated `l` times: sums out the last `l` coordinates.
    pub fn plus(&self, l: usize) -> Result<Weight> {
        let s = self
            .target
            .semiring()
            .ok_or_else(|| Error::Precondition("w⁺ needs a weight into a semiring".into()))?;
        if l == 0 || l > self.arity {
            return Err(Error::Range(format!(
                "cannot sum out {l} coordinates of a {}-ary weight",
                self.arity
            )));
        }
        let tail = self.base.tuples(l);
        let values: Vec<usize> = (0..self.base.tuples(self.arity - l))
            .map(|x| s.sum((0..tail).map(|u| self.values[x * tail + u])))
            .collect();
        if let Some(t) = s.mult().saturation() {
            if values.contains(&t) {
                return Err(Error::Saturation { threshold: t });
            }
        }
        Weight::new(self.base, self.arity - l, self.target.clone(), values)
    }

    pub fn render_values(&self) -> Vec<String> {
        let m = self.pomonoid();
        self.values.iter().map(|&v| m.name(v).to_string()).collect()
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Weight[B={}, k={}, |M|={}]({})",
            self.base.size(),
            self.arity,
            self.pomonoid().size(),
            self.render_values().join(" ")
        )
    }
}

/// `w(x) = (w_α(x))_α` into the direct product; the empty list gives the
/// trivial weight of the requested arity.
pub fn product_weight(base: BaseSet, arity: usize, ws: &[Weight], cap: usize) -> Result<Weight> {
    for w in ws {
        if w.base != base || w.arity != arity {
            return Err(Error::Shape("product of weights with different base or arity".into()));
        }
    }
    let factors: Vec<&Pomonoid> = ws.iter().map(|w| w.pomonoid()).collect();
    let prod = pomonoid::direct_product(&factors, cap)?;
    let values = (0..base.tuples(arity))
        .map(|x| ws.iter().fold(0, |acc, w| acc * w.pomonoid().size() + w.values[x]))
        .collect();
    Weight::into_monoid(base, arity, prod, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::builtin;

    fn b2() -> BaseSet {
        BaseSet::boolean()
    }

    #[test]
    fn substitution_examples() {
        let d = builtin::delta(b2(), OrderKind::Leq);
        assert_eq!(d.substitute(&[0, 1], 2).unwrap(), d);
        let diag = d.substitute(&[0, 0], 1).unwrap();
        assert!(diag.values().iter().all(|&v| v == diag.pomonoid().unit()));
        let aff = builtin::affine(b2());
        for rho in [[1, 0, 2, 3], [3, 2, 1, 0], [2, 0, 3, 1]] {
            assert_eq!(aff.substitute(&rho, 4).unwrap(), aff);
        }
        assert!(d.substitute(&[0, 2], 2).is_err());
    }

    #[test]
    fn homomorphic_images() {
        let w4 = builtin::modc(b2(), 4).unwrap();
        let id = MonoidHom::identity(Arc::new(w4.pomonoid().clone()));
        assert_eq!(w4.map_hom(&id).unwrap(), w4);
        let collapsed = w4.map_hom(&MonoidHom::collapse(Arc::new(w4.pomonoid().clone()))).unwrap();
        assert_eq!(collapsed.pomonoid().size(), 1);
        let red = w4.map_hom(&MonoidHom::cyclic_reduction(4, 2).unwrap()).unwrap();
        assert_eq!(red, builtin::modc(b2(), 2).unwrap());
    }

    #[test]
    fn products_and_restriction() {
        let w2 = builtin::modc(b2(), 2).unwrap();
        let w3 = builtin::modc(b2(), 3).unwrap();
        assert_eq!(product_weight(b2(), 1, &[w2.clone()], 64).unwrap().values(), w2.values());
        let triv = product_weight(b2(), 1, &[], 64).unwrap();
        assert_eq!(triv.pomonoid().size(), 1);
        let p = product_weight(b2(), 1, &[w2, w3], 64).unwrap().restrict_range();
        let w6 = builtin::modc(b2(), 6).unwrap().restrict_range();
        assert_eq!(p.pomonoid().size(), 6);
        assert!(p.pomonoid().is_commutative());
        // generated by the image of 1, which has order 6 in both
        let g = p.value(1);
        let mut x = p.pomonoid().unit();
        let mut order = 0;
        loop {
            x = p.pomonoid().mul(x, g);
            order += 1;
            if x == p.pomonoid().unit() {
                break;
            }
        }
        assert_eq!(order, w6.pomonoid().size());
    }

    #[test]
    fn range_restriction() {
        let c = builtin::cst1_nat(b2(), 1, OrderKind::Eq, 9).unwrap();
        assert_eq!(c.restrict_range().pomonoid().size(), 10);
        let w = builtin::cst1_trivial_in(b2(), 1, pomonoid::cyclic(2).unwrap());
        assert_eq!(w.restrict_range().pomonoid().size(), 1);
        // δ into a 3-chain whose bottom is unused
        let chain3 = Pomonoid::from_tables(
            2,
            vec![0, 0, 0, 0, 1, 1, 0, 1, 2],
            vec![true, true, true, false, true, true, false, false, true],
        )
        .unwrap();
        let d = Weight::into_monoid(b2(), 2, chain3, vec![2, 1, 1, 2]).unwrap();
        let r = d.restrict_range();
        assert_eq!(r.pomonoid().size(), 2);
        assert_eq!(r.restrict_range(), r);
    }

    #[test]
    fn sums() {
        let d = builtin::delta(b2(), OrderKind::Leq);
        let p = d.plus(1).unwrap();
        assert!(p.values().iter().all(|&v| v == 1));
        let c = builtin::cst1_semiring(b2(), 1, OrderKind::Geq, 9).unwrap();
        let s = c.plus(1).unwrap();
        assert_eq!(s.arity(), 0);
        assert_eq!(s.pomonoid().name(s.value(0)), "2");
        let aff = builtin::affine(b2());
        assert!(aff.plus(1).unwrap().values().iter().all(|&v| v == 1));
        let w = builtin::cst1_semiring(b2(), 2, OrderKind::Leq, 9).unwrap();
        assert_eq!(w.plus(2).unwrap(), w.plus(1).unwrap().plus(1).unwrap());
        assert!(builtin::modc(b2(), 2).unwrap().plus(1).is_err());
    }
}
