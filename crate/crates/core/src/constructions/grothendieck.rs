//! Adjoining inverses for a set of cancellative elements of a commutative
//! monoid.

use crate::error::{Error, Result};
use crate::order::Pomonoid;

/// `N = (M × M_U)/∼` with `(x,u) ∼ (y,v)` iff `xv = yu`, where `M_U` is the
/// submonoid generated by `U`. The order of `M` is ignored and `N` is
/// trivially ordered. Returns `N` and the embedding `x ↦ (x,1)/∼`.
pub fn grothendieck(m: &Pomonoid, u: &[usize]) -> Result<(Pomonoid, Vec<usize>)> {
    if !m.is_commutative() {
        return Err(Error::Precondition("grothendieck extension needs a commutative monoid".into()));
    }
    for &g in u {
        if g >= m.size() {
            return Err(Error::Range(format!("element {g} of a monoid of size {}", m.size())));
        }
        if let Some((x, y)) = cancellation_failure(m, g) {
            return Err(Error::Precondition(format!(
                "{g} is not cancellative: {g}·{x} = {g}·{y} but {x} ≠ {y}",
                g = m.name(g),
                x = m.name(x),
                y = m.name(y)
            )));
        }
    }
    let (_, denominators) = m.submonoid_generated(u);
    let equivalent = |(x, a): (usize, usize), (y, b): (usize, usize)| m.mul(x, b) == m.mul(y, a);

    // representatives in order of first appearance, numerators outermost
    let mut reps: Vec<(usize, usize)> = Vec::new();
    let mut class = vec![0usize; m.size() * denominators.len()];
    let slot = |x: usize, a: usize| x * denominators.len() + a;
    for x in m.elements() {
        for (ai, &a) in denominators.iter().enumerate() {
            class[slot(x, ai)] = match reps.iter().position(|&r| equivalent(r, (x, a))) {
                Some(c) => c,
                None => {
                    reps.push((x, a));
                    reps.len() - 1
                }
            };
        }
    }
    let position = |a: usize| denominators.binary_search(&a).expect("denominator");
    let k = reps.len();
    let mut mul = Vec::with_capacity(k * k);
    for &(x, a) in &reps {
        for &(y, b) in &reps {
            mul.push(class[slot(m.mul(x, y), position(m.mul(a, b)))]);
        }
    }
    let names = reps
        .iter()
        .map(|&(x, a)| {
            if a == m.unit() {
                m.name(x).to_string()
            } else {
                format!("{}/{}", m.name(x), m.name(a))
            }
        })
        .collect();
    let unit_slot = position(m.unit());
    let leq = (0..k * k).map(|i| i / k == i % k).collect();
    let n = Pomonoid::new(names, class[slot(m.unit(), unit_slot)], mul, leq)?;
    let embedding = m.elements().map(|x| class[slot(x, unit_slot)]).collect();
    Ok((n, embedding))
}

fn cancellation_failure(m: &Pomonoid, g: usize) -> Option<(usize, usize)> {
    m.elements()
        .flat_map(|x| m.elements().map(move |y| (x, y)))
        .find(|&(x, y)| x != y && m.mul(g, x) == m.mul(g, y))
}
