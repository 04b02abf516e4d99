//! The preservation relation `f ▷ w`.
//!
//! A matrix is a choice of `k` graph pairs `(a^j, b^j)` of `f` (rows may
//! repeat). Its input columns `a_i ∈ B^k` and output columns `b_i ∈ B^k` are
//! weighed, and `f ▷ w` requires `Π_i w(a_i) ≤ Π_i w(b_i)` for every matrix.
//! Matrices are enumerated row-major over the graph pairs in index order, so
//! the first counterexample is well defined.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::order::Pomonoid;
use crate::pmf::Pmf;
use crate::tuple;
use crate::weights::Weight;

/// A matrix refuting `f ▷ w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// The rows `(a^j, b^j)` as tuple codes.
    pub rows: Vec<(usize, usize)>,
    /// `Π w(a_i)` and `Π w(b_i)`.
    pub left: usize,
    pub right: usize,
}

impl Witness {
    /// Column codes of the input and output sides.
    pub fn columns(&self, f: &Pmf) -> (Vec<usize>, Vec<usize>) {
        columns(f, &self.rows)
    }

    pub fn describe(&self, f: &Pmf, w: &Weight) -> String {
        let b = f.base().size();
        let k = self.rows.len();
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|&(x, y)| {
                format!(
                    "{}->{}",
                    tuple::render(b, f.n(), x),
                    tuple::render(b, f.m(), y)
                )
            })
            .collect();
        let (a, c) = self.columns(f);
        let col = |v: &[usize]| {
            v.iter()
                .map(|&c| tuple::render(b, k, c))
                .collect::<Vec<_>>()
                .join(",")
        };
        let m = w.pomonoid();
        format!(
            "rows [{}], columns a=({}) b=({}): {} is not <= {}",
            rows.join(" "),
            col(&a),
            col(&c),
            m.name(self.left),
            m.name(self.right)
        )
    }
}

fn columns(f: &Pmf, rows: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let b = f.base().size();
    let mut a = vec![0; f.n()];
    let mut c = vec![0; f.m()];
    for &(x, y) in rows {
        for (i, col) in a.iter_mut().enumerate() {
            *col = *col * b + tuple::digit(b, f.n(), x, i);
        }
        for (i, col) in c.iter_mut().enumerate() {
            *col = *col * b + tuple::digit(b, f.m(), y, i);
        }
    }
    (a, c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preservation {
    Holds,
    Fails(Witness),
}

impl Preservation {
    pub fn holds(&self) -> bool {
        matches!(self, Preservation::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Preservation::Holds => None,
            Preservation::Fails(w) => Some(w),
        }
    }
}

/// Number of matrices a scan over `pairs` graph pairs with `k` rows visits.
pub fn matrix_count(pairs: usize, k: usize) -> u128 {
    (pairs as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

pub(crate) fn check_budget(pairs: usize, k: usize, budget: u64) -> Result<()> {
    let needed = matrix_count(pairs, k);
    if needed > budget as u128 {
        return Err(Error::Budget { needed, budget });
    }
    Ok(())
}

/// Digits of each graph pair, precomputed for the scan.
pub(crate) struct Rows {
    pub pairs: Vec<(usize, usize)>,
    input: Vec<Vec<usize>>,
    output: Vec<Vec<usize>>,
}

impl Rows {
    pub fn new(base: usize, n: usize, m: usize, pairs: Vec<(usize, usize)>) -> Self {
        let input = pairs.iter().map(|&(x, _)| tuple::decode(base, n, x)).collect();
        let output = pairs.iter().map(|&(_, y)| tuple::decode(base, m, y)).collect();
        Rows { pairs, input, output }
    }
}

/// Depth-first matrix scan; `visit` receives the chosen row indices and the
/// verdict `Π w(a_i) ≤ Π w(b_i)` and returns `false` to stop.
pub(crate) struct Scanner<'a> {
    w: &'a Weight,
    m: &'a Pomonoid,
    base: usize,
    rows: &'a Rows,
    n: usize,
    mm: usize,
    k: usize,
}

pub(crate) enum Step {
    Continue,
    Stop,
}

impl<'a> Scanner<'a> {
    pub fn new(w: &'a Weight, rows: &'a Rows, n: usize, m: usize) -> Self {
        Scanner {
            w,
            m: w.pomonoid(),
            base: w.base().size(),
            rows,
            n,
            mm: m,
            k: w.arity(),
        }
    }

    fn product(&self, cols: &[usize]) -> Result<usize> {
        let sat = self.m.saturation();
        let mut acc = self.m.unit();
        for &c in cols {
            let v = self.w.value(c);
            acc = self.m.mul(acc, v);
            if Some(v) == sat || Some(acc) == sat {
                return Err(Error::Saturation {
                    threshold: sat.unwrap_or_default(),
                });
            }
        }
        Ok(acc)
    }

    /// Evaluates a completed matrix.
    fn judge(&self, a: &[usize], b: &[usize]) -> Result<(bool, usize, usize)> {
        let l = self.product(a)?;
        let r = self.product(b)?;
        Ok((self.m.leq(l, r), l, r))
    }

    /// Scans all matrices whose first rows are `prefix`.
    pub fn scan(
        &self,
        prefix: &[usize],
        visit: &mut dyn FnMut(&[usize], bool, usize, usize) -> Step,
    ) -> Result<bool> {
        let mut chosen = Vec::with_capacity(self.k);
        let mut a = vec![vec![0usize; self.n]; self.k + 1];
        let mut b = vec![vec![0usize; self.mm]; self.k + 1];
        for &p in prefix {
            self.push(&mut chosen, &mut a, &mut b, p);
        }
        self.go(&mut chosen, &mut a, &mut b, visit)
    }

    fn push(&self, chosen: &mut Vec<usize>, a: &mut [Vec<usize>], b: &mut [Vec<usize>], p: usize) {
        let j = chosen.len();
        let (lo, hi) = a.split_at_mut(j + 1);
        for i in 0..self.n {
            hi[0][i] = lo[j][i] * self.base + self.rows.input[p][i];
        }
        let (lo, hi) = b.split_at_mut(j + 1);
        for i in 0..self.mm {
            hi[0][i] = lo[j][i] * self.base + self.rows.output[p][i];
        }
        chosen.push(p);
    }

    fn go(
        &self,
        chosen: &mut Vec<usize>,
        a: &mut [Vec<usize>],
        b: &mut [Vec<usize>],
        visit: &mut dyn FnMut(&[usize], bool, usize, usize) -> Step,
    ) -> Result<bool> {
        let j = chosen.len();
        if j == self.k {
            let (ok, l, r) = self.judge(&a[j], &b[j])?;
            return Ok(matches!(visit(chosen, ok, l, r), Step::Continue));
        }
        for p in 0..self.rows.pairs.len() {
            self.push(chosen, a, b, p);
            let go_on = self.go(chosen, a, b, visit)?;
            chosen.pop();
            if !go_on {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn compatible(f: &Pmf, w: &Weight) -> Result<()> {
    if f.base() != w.base() {
        return Err(Error::Shape("pmf and weight live over different bases".into()));
    }
    Ok(())
}

fn first_failure(s: &Scanner<'_>, rows: &Rows, prefix: &[usize]) -> Result<Option<Witness>> {
    let mut found = None;
    s.scan(prefix, &mut |chosen, ok, l, r| {
        if ok {
            return Step::Continue;
        }
        found = Some(Witness {
            rows: chosen.iter().map(|&p| rows.pairs[p]).collect(),
            left: l,
            right: r,
        });
        Step::Stop
    })?;
    Ok(found)
}

/// Decides `f ▷ w`, returning the first refuting matrix on failure.
pub fn preserves(f: &Pmf, w: &Weight, budget: u64) -> Result<Preservation> {
    compatible(f, w)?;
    check_budget(f.len(), w.arity(), budget)?;
    let rows = Rows::new(f.base().size(), f.n(), f.m(), f.pairs().collect());
    let s = Scanner::new(w, &rows, f.n(), f.m());
    Ok(match first_failure(&s, &rows, &[])? {
        None => Preservation::Holds,
        Some(wit) => Preservation::Fails(wit),
    })
}

/// As [`preserves`], with the scan split across threads by first row. The
/// witness reported is the same as in the sequential scan.
pub fn preserves_par(f: &Pmf, w: &Weight, budget: u64) -> Result<Preservation> {
    compatible(f, w)?;
    check_budget(f.len(), w.arity(), budget)?;
    if w.arity() == 0 || f.is_empty() {
        return preserves(f, w, budget);
    }
    let rows = Rows::new(f.base().size(), f.n(), f.m(), f.pairs().collect());
    let s = Scanner::new(w, &rows, f.n(), f.m());
    let found = (0..rows.pairs.len())
        .into_par_iter()
        .map(|p| first_failure(&s, &rows, &[p]))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    Ok(match found {
        None => Preservation::Holds,
        Some(r) => match r? {
            None => Preservation::Holds,
            Some(wit) => Preservation::Fails(wit),
        },
    })
}

/// `f ▷ w` for every `w` in `ws`.
pub fn preserves_all(f: &Pmf, ws: &[Weight], budget: u64) -> Result<bool> {
    for w in ws {
        if !preserves(f, w, budget)?.holds() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{BaseSet, DEFAULT_BUDGET};
    use crate::gates;
    use crate::order::OrderKind;
    use crate::pmf;
    use crate::weights::builtin;

    fn b2() -> BaseSet {
        BaseSet::boolean()
    }

    fn holds(f: &Pmf, w: &Weight) -> bool {
        preserves(f, w, DEFAULT_BUDGET).unwrap().holds()
    }

    #[test]
    fn trivial_weight_is_preserved_by_everything() {
        let w = builtin::trivial(b2(), 2);
        for f in pmf::all_of_shape(b2(), 1, 2).unwrap() {
            assert!(holds(&f, &w));
        }
    }

    #[test]
    fn not_breaks_conservation() {
        let w = builtin::conservative(b2(), 9).unwrap();
        let r = preserves(&gates::not(), &w, DEFAULT_BUDGET).unwrap();
        let wit = r.witness().unwrap();
        assert_eq!(wit.rows, vec![(0, 1)]);
        assert_eq!(wit.columns(&gates::not()), (vec![0], vec![1]));
        assert!(holds(&gates::swap(), &w));
        assert!(holds(&gates::fredkin(), &w));
    }

    #[test]
    fn affine_weight_separates_xor_from_and() {
        let w = builtin::affine(b2());
        assert!(holds(&gates::xor(), &w));
        let and = gates::and();
        let r = preserves(&and, &w, DEFAULT_BUDGET).unwrap();
        let wit = r.witness().unwrap();
        let (a, b) = wit.columns(&and);
        assert_eq!(w.value(a[0]), 1);
        assert_eq!(w.value(a[1]), 1);
        assert_eq!(w.value(b[0]), 0);
        // one refuting matrix has the columns of the truth table
        let rows = vec![(0, 0), (1, 0), (2, 0), (3, 1)];
        let (a, b) = columns(&and, &rows);
        assert_eq!(a, vec![0b0011, 0b0101]);
        let m = w.pomonoid();
        assert!(!m.leq(m.mul(w.value(a[0]), w.value(a[1])), w.value(b[0])));
    }

    #[test]
    fn nullary_weights_compare_arities() {
        let w = builtin::cst1_nat(b2(), 0, OrderKind::Eq, 9).unwrap();
        assert!(holds(&gates::cnot(), &w));
        assert!(!holds(&gates::xor(), &w));
        let le = builtin::cst1_nat(b2(), 0, OrderKind::Leq, 9).unwrap();
        assert!(holds(&pmf::diagonal(b2(), 2).unwrap(), &le));
        assert!(!holds(&gates::xor(), &le));
    }

    #[test]
    fn budget_is_enforced() {
        let f = pmf::Pmf::from_mask(b2(), 2, 2, 0xffff).unwrap();
        let w = builtin::affine(b2());
        assert!(matches!(preserves(&f, &w, 100), Err(Error::Budget { .. })));
    }

    #[test]
    fn saturation_is_reported() {
        let w = builtin::cst1_nat(b2(), 0, OrderKind::Eq, 2).unwrap();
        let f = pmf::identity(b2(), 2).unwrap();
        assert!(matches!(preserves(&f, &w, DEFAULT_BUDGET), Err(Error::Saturation { .. })));
    }

    #[test]
    fn parallel_scan_finds_the_same_witness() {
        let w = builtin::affine(b2());
        for mask in [0x8421u64, 0x1248, 0xf0f0, 0x0f1e, 0xffff] {
            let f = pmf::Pmf::from_mask(b2(), 2, 2, mask).unwrap();
            assert_eq!(
                preserves(&f, &w, DEFAULT_BUDGET).unwrap(),
                preserves_par(&f, &w, DEFAULT_BUDGET).unwrap()
            );
        }
    }
}
