//! Big-endian positional codes for tuples over the base set.
//!
//! The tuple `(x^0, .., x^{k-1})` has code `sum_j x^j * |B|^(k-1-j)`, so the
//! coordinate with index 0 is the most significant digit.

use serde::{Deserialize, Serialize};

use crate::config::BaseSet;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TupleCode {
    pub arity: usize,
    pub code: usize,
}

impl TupleCode {
    pub fn encode(base: BaseSet, digits: &[usize]) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d >= base.size()) {
            return Err(Error::Range(format!(
                "digit {d} not in a base set of size {}",
                base.size()
            )));
        }
        Ok(TupleCode {
            arity: digits.len(),
            code: encode(base.size(), digits),
        })
    }

    pub fn decode(self, base: BaseSet) -> Vec<usize> {
        decode(base.size(), self.arity, self.code)
    }
}

pub fn encode(base: usize, digits: &[usize]) -> usize {
    digits.iter().fold(0, |acc, &d| acc * base + d)
}

pub fn decode(base: usize, arity: usize, code: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    let mut rest = code;
    for slot in out.iter_mut().rev() {
        *slot = rest % base;
        rest /= base;
    }
    out
}

/// Digit `j` (0 = leftmost) of a code of the given arity.
pub fn digit(base: usize, arity: usize, code: usize, j: usize) -> usize {
    (code / base.pow((arity - 1 - j) as u32)) % base
}

/// Renders a tuple as a compact digit string, `ε` for the empty tuple.
pub fn render(base: usize, arity: usize, code: usize) -> String {
    if arity == 0 {
        return "ε".to_string();
    }
    decode(base, arity, code)
        .iter()
        .map(|d| char::from_digit(*d as u32, 10).unwrap_or('?'))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn leftmost_digit_is_most_significant() {
        assert_eq!(encode(2, &[1, 0]), 2);
        assert_eq!(encode(3, &[1, 2, 0]), 15);
        assert_eq!(decode(2, 3, 6), vec![1, 1, 0]);
        assert_eq!(digit(2, 3, 6, 0), 1);
        assert_eq!(digit(2, 3, 6, 2), 0);
        assert_eq!(encode(2, &[]), 0);
        assert_eq!(render(2, 0, 0), "ε");
    }

    #[test]
    fn out_of_range_digit_rejected() {
        assert!(TupleCode::encode(BaseSet::boolean(), &[0, 2]).is_err());
    }

    proptest! {
        #[test]
        fn decode_inverts_encode(base in 2usize..=4, digits in proptest::collection::vec(0usize..4, 0..6)) {
            let digits: Vec<usize> = digits.into_iter().map(|d| d % base).collect();
            let b = BaseSet::new(base).unwrap();
            let t = TupleCode::encode(b, &digits).unwrap();
            prop_assert!(t.code < b.tuples(digits.len()));
            prop_assert_eq!(t.decode(b), digits);
        }
    }
}
