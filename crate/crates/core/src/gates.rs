//! Named Boolean gates and small total functions used as generators.

use crate::config::BaseSet;
use crate::error::{Error, Result};
use crate::pmf::{self, Pmf};

fn b2() -> BaseSet {
    BaseSet::boolean()
}

fn bits(n: usize, x: usize) -> Vec<usize> {
    crate::tuple::decode(2, n, x)
}

fn code(digits: &[usize]) -> usize {
    crate::tuple::encode(2, digits)
}

fn boolean_gate(n: usize, m: usize, f: impl Fn(&[usize]) -> Vec<usize>) -> Pmf {
    Pmf::from_fn(b2(), n, m, |x| code(&f(&bits(n, x)))).expect("gate shapes are small")
}

pub fn not() -> Pmf {
    boolean_gate(1, 1, |x| vec![1 - x[0]])
}

/// `(x, y) ↦ (x, x ⊕ y)`: the first wire controls the second.
pub fn cnot() -> Pmf {
    boolean_gate(2, 2, |x| vec![x[0], x[0] ^ x[1]])
}

/// `(x, y) ↦ (x ⊕ y, y)`: the second wire controls the first.
pub fn cnot_reversed() -> Pmf {
    boolean_gate(2, 2, |x| vec![x[0] ^ x[1], x[1]])
}

pub fn toffoli() -> Pmf {
    boolean_gate(3, 3, |x| vec![x[0], x[1], x[2] ^ (x[0] & x[1])])
}

/// Controlled swap; the first wire is the control.
pub fn fredkin() -> Pmf {
    boolean_gate(3, 3, |x| {
        if x[0] == 1 {
            vec![1, x[2], x[1]]
        } else {
            x.to_vec()
        }
    })
}

pub fn xor() -> Pmf {
    boolean_gate(2, 1, |x| vec![x[0] ^ x[1]])
}

pub fn and() -> Pmf {
    boolean_gate(2, 1, |x| vec![x[0] & x[1]])
}

pub fn swap() -> Pmf {
    pmf::swap(b2())
}

/// Looks up a gate or structural map by its CLI name.
///
/// Besides the gates above this accepts `delta2`, `id1`, `id2`, `pi20`,
/// `pi21`, `const0`, `const1` and `discard`, always over the given base
/// where that makes sense.
pub fn by_name(name: &str, base: BaseSet) -> Result<Pmf> {
    let boolean_only = |f: fn() -> Pmf| {
        if base.size() == 2 {
            Ok(f())
        } else {
            Err(Error::Precondition(format!("gate {name} is only defined over |B| = 2")))
        }
    };
    match name {
        "not" => boolean_only(not),
        "cnot" => boolean_only(cnot),
        "cnot_rev" | "cnot-rev" => boolean_only(cnot_reversed),
        "toffoli" => boolean_only(toffoli),
        "fredkin" => boolean_only(fredkin),
        "xor" => boolean_only(xor),
        "and" => boolean_only(and),
        "swap" => Ok(pmf::swap(base)),
        "delta2" => pmf::diagonal(base, 2),
        "id1" => pmf::identity(base, 1),
        "id2" => pmf::identity(base, 2),
        "pi20" => pmf::projection(base, 2, 0),
        "pi21" => pmf::projection(base, 2, 1),
        "const0" => pmf::constant(base, &[0]),
        "const1" => pmf::constant(base, &[1]),
        "discard" => pmf::variable_map(base, 1, &[]),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

pub const NAMES: &[&str] = &[
    "not", "cnot", "cnot_rev", "toffoli", "fredkin", "xor", "and", "swap", "delta2", "id1", "id2",
    "pi20", "pi21", "const0", "const1", "discard",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fredkin_truth_table() {
        let f = fredkin();
        assert_eq!(f.len(), 8);
        assert!(f.is_permutation());
        assert_eq!(f.apply(0b101), Some(0b110));
        assert_eq!(f.apply(0b011), Some(0b011));
    }

    #[test]
    fn toffoli_flips_target_on_both_controls() {
        let t = toffoli();
        assert_eq!(t.apply(0b110), Some(0b111));
        assert_eq!(t.apply(0b100), Some(0b100));
    }

    #[test]
    fn every_name_resolves() {
        for name in NAMES {
            by_name(name, BaseSet::boolean()).unwrap();
        }
        assert!(by_name("nand", BaseSet::boolean()).is_err());
        assert!(by_name("cnot", BaseSet::new(3).unwrap()).is_err());
    }
}
