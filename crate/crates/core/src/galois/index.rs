//! Dense downward-closed families of pmfs of one shape.
//!
//! A family over a pair space of `P ≤ 20` bits is a bitmap of `2^P` bits
//! indexed by graph masks. Downward (upward) closure is a subset-sum zeta
//! transform, done in place one pair bit at a time.

pub const DENSE_MAX_PAIRS: usize = 20;

const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseSet {
    pairs: usize,
    words: Vec<u64>,
}

impl std::fmt::Debug for DenseSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DenseSet({} pairs, {} members)", self.pairs, self.count())
    }
}

impl DenseSet {
    pub fn empty(pairs: usize) -> Self {
        assert!(pairs <= DENSE_MAX_PAIRS, "dense index over {pairs} pairs");
        let bits = 1usize << pairs;
        DenseSet {
            pairs,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    fn valid_mask(&self) -> u64 {
        let bits = 1usize << self.pairs;
        if bits >= 64 {
            u64::MAX
        } else {
            (1u64 << bits) - 1
        }
    }

    pub fn contains(&self, mask: u64) -> bool {
        let i = mask as usize;
        i >> self.pairs == 0 && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, mask: u64) {
        let i = mask as usize;
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(wi as u64 * 64 + b)
            })
        })
    }

    /// Closes the family under subsets.
    pub fn close_down(&mut self) {
        for b in 0..self.pairs {
            if b >= 6 {
                let step = 1usize << (b - 6);
                for w in 0..self.words.len() {
                    if w & step == 0 {
                        self.words[w] |= self.words[w | step];
                    }
                }
            } else {
                let s = 1u32 << b;
                for x in &mut self.words {
                    *x |= (*x >> s) & LOW_MASKS[b];
                }
            }
        }
        let valid = self.valid_mask();
        self.words[0] &= valid;
    }

    /// Closes the family under supersets.
    pub fn close_up(&mut self) {
        for b in 0..self.pairs {
            if b >= 6 {
                let step = 1usize << (b - 6);
                for w in 0..self.words.len() {
                    if w & step == 0 {
                        self.words[w | step] |= self.words[w];
                    }
                }
            } else {
                let s = 1u32 << b;
                for x in &mut self.words {
                    *x |= (*x & LOW_MASKS[b]) << s;
                }
            }
        }
        let valid = self.valid_mask();
        self.words[0] &= valid;
    }

    pub fn complement(&mut self) {
        for x in &mut self.words {
            *x = !*x;
        }
        let valid = self.valid_mask();
        self.words[0] &= valid;
    }

    /// The downward closure of `tops`.
    pub fn generated(pairs: usize, tops: impl IntoIterator<Item = u64>) -> Self {
        let mut s = DenseSet::empty(pairs);
        for t in tops {
            s.insert(t);
        }
        s.close_down();
        s
    }

    /// The family of sets containing none of `bad`.
    pub fn avoiding(pairs: usize, bad: impl IntoIterator<Item = u64>) -> Self {
        let mut s = DenseSet::empty(pairs);
        for t in bad {
            s.insert(t);
        }
        s.close_up();
        s.complement();
        s
    }

    /// Members with no one-element extension inside the family; for a
    /// downward-closed family these generate it.
    pub fn maximal(&self) -> Vec<u64> {
        // extendable[x] = some x ∪ {b} with b ∉ x is a member
        let mut extendable = vec![0u64; self.words.len()];
        for b in 0..self.pairs {
            if b >= 6 {
                let step = 1usize << (b - 6);
                for w in 0..self.words.len() {
                    if w & step == 0 {
                        extendable[w] |= self.words[w | step];
                    }
                }
            } else {
                let s = 1u32 << b;
                for (e, &x) in extendable.iter_mut().zip(&self.words) {
                    *e |= (x >> s) & LOW_MASKS[b];
                }
            }
        }
        let mut out = DenseSet {
            pairs: self.pairs,
            words: self.words.clone(),
        };
        for (x, e) in out.words.iter_mut().zip(extendable) {
            *x &= !e;
        }
        out.iter().collect()
    }

    pub fn is_down_closed(&self) -> bool {
        (0..self.pairs).all(|b| {
            if b >= 6 {
                let step = 1usize << (b - 6);
                (0..self.words.len())
                    .filter(|w| w & step != 0)
                    .all(|w| self.words[w] & !self.words[w ^ step] == 0)
            } else {
                let s = 1u32 << b;
                self.words
                    .iter()
                    .all(|&x| x & !LOW_MASKS[b] & !((x & LOW_MASKS[b]) << s) == 0)
            }
        })
    }
}
