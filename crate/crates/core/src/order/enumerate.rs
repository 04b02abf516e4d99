//! Exhaustive generation of small monoids and pomonoids up to isomorphism.

use std::collections::BTreeSet;

use crate::order::pomonoid::{check_partial_order, Pomonoid};
use crate::order::preorder::all_preorders;

/// All multiplication tables on `0..n` with unit `0`, labelled.
pub fn labelled_monoid_tables(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    const UNSET: usize = usize::MAX;
    let mut mul = vec![UNSET; n * n];
    for a in 0..n {
        mul[a] = a;
        mul[a * n] = a;
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();

    fn associative_so_far(n: usize, mul: &[usize]) -> bool {
        const UNSET: usize = usize::MAX;
        for x in 0..n {
            for y in 0..n {
                let xy = mul[x * n + y];
                if xy == UNSET {
                    continue;
                }
                for z in 0..n {
                    let yz = mul[y * n + z];
                    if yz == UNSET {
                        continue;
                    }
                    let l = mul[xy * n + z];
                    let r = mul[x * n + yz];
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(i: usize, n: usize, cells: &[(usize, usize)], mul: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cells.len() {
            out.push(mul.clone());
            return;
        }
        let (a, b) = cells[i];
        for v in 0..n {
            mul[a * n + b] = v;
            if associative_so_far(n, mul) {
                go(i + 1, n, cells, mul, out);
            }
        }
        mul[a * n + b] = usize::MAX;
    }
    go(0, n, &cells, &mut mul, &mut out);
    out
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    fn heap(k: usize, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            let mut p = vec![0];
            p.extend_from_slice(rest);
            out.push(p);
            return;
        }
        for i in 0..k {
            heap(k - 1, rest, out);
            if k % 2 == 0 {
                rest.swap(i, k - 1);
            } else {
                rest.swap(0, k - 1);
            }
        }
    }
    if n == 0 {
        return out;
    }
    let len = rest.len();
    heap(len, &mut rest, &mut out);
    out
}

/// Lexicographically least relabelling of `(mul, leq)` under permutations
/// fixing the unit `0`.
fn canonical(n: usize, mul: &[usize], leq: &[bool], perms: &[Vec<usize>]) -> (Vec<usize>, Vec<bool>) {
    let mut best: Option<(Vec<usize>, Vec<bool>)> = None;
    for p in perms {
        // p maps old -> new; build inverse to read new cells
        let mut inv = vec![0; n];
        for (old, &new) in p.iter().enumerate() {
            inv[new] = old;
        }
        let m: Vec<usize> = (0..n * n).map(|i| p[mul[inv[i / n] * n + inv[i % n]]]).collect();
        let l: Vec<bool> = (0..n * n).map(|i| leq[inv[i / n] * n + inv[i % n]]).collect();
        let cand = (m, l);
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    }
    best.expect("at least the identity permutation")
}

fn discrete(n: usize) -> Vec<bool> {
    (0..n * n).map(|i| i / n == i % n).collect()
}

/// Monoid tables of size `n` up to isomorphism (canonical representatives,
/// sorted).
pub fn monoid_tables_up_to_iso(n: usize) -> Vec<Vec<usize>> {
    let perms = permutations_fixing_zero(n);
    let eq = discrete(n);
    let set: BTreeSet<Vec<usize>> = labelled_monoid_tables(n)
        .iter()
        .map(|t| canonical(n, t, &eq, &perms).0)
        .collect();
    set.into_iter().collect()
}

/// Trivially ordered monoids of size `n` up to isomorphism.
pub fn monoids(n: usize) -> Vec<Pomonoid> {
    monoid_tables_up_to_iso(n)
        .into_iter()
        .map(|t| Pomonoid::from_tables(0, t, discrete(n)).expect("generated tables are monoids"))
        .collect()
}

/// All pomonoids of size `n` up to isomorphism, every compatible partial
/// order on every monoid. Intended for `n ≤ 4`.
pub fn pomonoids(n: usize) -> Vec<Pomonoid> {
    let perms = permutations_fixing_zero(n);
    let orders: Vec<Vec<bool>> = all_preorders(n)
        .into_iter()
        .map(|r| (0..n * n).map(|i| r.contains(i / n, i % n)).collect::<Vec<bool>>())
        .filter(|leq| check_partial_order(n, leq).is_none())
        .collect();
    let mut seen = BTreeSet::new();
    for table in monoid_tables_up_to_iso(n) {
        for leq in &orders {
            let compatible = (0..n).all(|a| {
                (0..n).all(|b| {
                    !leq[a * n + b]
                        || (0..n).all(|c| {
                            leq[table[a * n + c] * n + table[b * n + c]] && leq[table[c * n + a] * n + table[c * n + b]]
                        })
                })
            });
            if compatible {
                seen.insert(canonical(n, &table, leq, &perms));
            }
        }
    }
    seen.into_iter()
        .map(|(t, l)| Pomonoid::from_tables(0, t, l).expect("compatible by construction"))
        .collect()
}
