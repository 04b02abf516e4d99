//! The named example weights.

use std::sync::Arc;

use crate::config::BaseSet;
use crate::error::{Error, Result};
use crate::order::pomonoid::{self, Pomonoid};
use crate::order::preorder;
use crate::order::semiring;
use crate::order::OrderKind;
use crate::weights::weight::{Target, Weight};

fn boolean_target(order: OrderKind) -> Target {
    Target::Semiring(Arc::new(semiring::boolean(order)))
}

/// `cst_1: B^k → ⟨ℕ_T, 0, +⟩`, constantly `1`.
pub fn cst1_nat(base: BaseSet, k: usize, order: OrderKind, threshold: usize) -> Result<Weight> {
    let m = pomonoid::nat_add(threshold, order)?;
    Weight::into_monoid(base, k, m, vec![1; base.tuples(k)])
}

/// `cst_1: B^k → ⟨ℕ_T, 1, ·, 0, +⟩`, constantly the unit `1`; summing out a
/// coordinate yields `|B|`.
pub fn cst1_semiring(base: BaseSet, k: usize, order: OrderKind, threshold: usize) -> Result<Weight> {
    let s = semiring::nat(threshold, order)?;
    Weight::into_semiring(base, k, s, vec![1; base.tuples(k)])
}

/// Kronecker `δ: B^2 → ⟨2, 1, ∧⟩`.
pub fn delta(base: BaseSet, order: OrderKind) -> Weight {
    Weight::from_fn(base, 2, boolean_target(order), |x| usize::from(x[0] == x[1])).expect("δ is well formed")
}

/// `w(x^0, .., x^3) = x^0 + x^1 + x^2 + x^3 + 1 (mod 2)` into `⟨2, 1, ∧, ≤⟩`.
pub fn affine(base: BaseSet) -> Weight {
    Weight::from_fn(base, 4, boolean_target(OrderKind::Leq), |x| (x.iter().sum::<usize>() + 1) % 2)
        .expect("affine weight is well formed")
}

/// `cst_0: B^k → ⟨2, 1, ∧⟩`, constantly `0`.
pub fn cst0(base: BaseSet, k: usize, order: OrderKind) -> Weight {
    Weight::from_fn(base, k, boolean_target(order), |_| 0).expect("cst_0 is well formed")
}

/// `w(x) = x` into `⟨ℕ_T, 0, +, =⟩`; over `{0,1}` a product of column
/// weights counts ones.
pub fn conservative(base: BaseSet, threshold: usize) -> Result<Weight> {
    if threshold < base.size() {
        return Err(Error::Config(format!("threshold {threshold} below the base size")));
    }
    let m = pomonoid::nat_add(threshold, OrderKind::Eq)?;
    Weight::into_monoid(base, 1, m, base.elements().collect())
}

/// `w(x) = x mod c` into `ℤ/c`.
pub fn modc(base: BaseSet, c: usize) -> Result<Weight> {
    if c < 2 {
        return Err(Error::Range(format!("mod-c weight needs c ≥ 2, got {c}")));
    }
    Weight::into_monoid(base, 1, pomonoid::cyclic(c)?, base.elements().map(|x| x % c).collect())
}

/// The trivial weight `B^k → 1`.
pub fn trivial(base: BaseSet, k: usize) -> Weight {
    cst1_trivial_in(base, k, pomonoid::trivial())
}

/// The constant weight at the unit of `m`.
pub fn cst1_trivial_in(base: BaseSet, k: usize, m: Pomonoid) -> Weight {
    let u = m.unit();
    Weight::into_monoid(base, k, m, vec![u; base.tuples(k)]).expect("constant weight is well formed")
}

/// `cst_1: B^0 → ℕ/⪯` where `⪯` is the least invariant preorder on the
/// unordered `ℕ_T` containing `pairs`.
pub fn shape(base: BaseSet, pairs: &[(usize, usize)], threshold: usize) -> Result<Weight> {
    let nat = pomonoid::nat_add(threshold, OrderKind::Eq)?;
    let rel = preorder::least_invariant_preorder(&nat, pairs)?;
    let (q, map) = preorder::quotient(&nat, &rel)?;
    Weight::into_monoid(base, 0, q, vec![map[1]])
}

/// Parameters accepted by [`by_name`].
#[derive(Debug, Clone)]
pub struct Params {
    pub k: Option<usize>,
    pub order: OrderKind,
    pub c: Option<usize>,
    pub threshold: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            k: None,
            order: OrderKind::Leq,
            c: None,
            threshold: 9,
            pairs: Vec::new(),
        }
    }
}

pub const NAMES: &[&str] = &[
    "cst1",
    "cst1-semiring",
    "delta",
    "affine",
    "cst0",
    "conservative",
    "mod",
    "shape",
    "trivial",
];

pub fn by_name(name: &str, base: BaseSet, p: &Params) -> Result<Weight> {
    match name {
        "cst1" => cst1_nat(base, p.k.unwrap_or(0), p.order, p.threshold),
        "cst1-semiring" => cst1_semiring(base, p.k.unwrap_or(1), p.order, p.threshold),
        "delta" => Ok(delta(base, p.order)),
        "affine" => {
            if base.size() != 2 {
                return Err(Error::Precondition("the affine weight is defined over |B| = 2".into()));
            }
            Ok(affine(base))
        }
        "cst0" => Ok(cst0(base, p.k.unwrap_or(0), p.order)),
        "conservative" => conservative(base, p.threshold),
        "mod" => modc(base, p.c.unwrap_or(2)),
        "shape" => shape(base, &p.pairs, p.threshold),
        "trivial" => Ok(trivial(base, p.k.unwrap_or(0))),
        _ => Err(Error::UnknownName(format!("weight {name:?}"))),
    }
}

/// The standard corpus of named weights over a base of size 2, labelled.
pub fn catalog(base: BaseSet, threshold: usize) -> Result<Vec<(String, Weight)>> {
    let mut out = Vec::new();
    for order in [OrderKind::Leq, OrderKind::Geq, OrderKind::Eq] {
        let s = order.symbol();
        out.push((format!("cst1{s}"), cst1_nat(base, 0, order, threshold)?));
        out.push((format!("delta{s}"), delta(base, order)));
        out.push((format!("cst0{s}"), cst0(base, 0, order)));
        out.push((format!("cst0-unary{s}"), cst0(base, 1, order)));
        out.push((format!("cst1-semiring{s}"), cst1_semiring(base, 1, order, threshold)?));
    }
    out.push(("conservative".into(), conservative(base, threshold)?));
    out.push(("mod2".into(), modc(base, 2)?));
    out.push(("mod3".into(), modc(base, 3)?));
    if base.size() == 2 {
        out.push(("affine".into(), affine(base)));
    }
    out.push(("trivial".into(), trivial(base, 1)));
    Ok(out)
}
