//! The monoidal semiring `ℕ[M]` of formal sums over a finite pomonoid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::order::Pomonoid;

pub const MAX_UPSET_CARRIER: usize = 14;

/// `Σ_u x_u u`, stored densely by element index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FormalSum(pub Vec<u64>);

impl FormalSum {
    pub fn zero(m: &Pomonoid) -> Self {
        FormalSum(vec![0; m.size()])
    }

    /// The single term `[u]`.
    pub fn of(m: &Pomonoid, u: usize) -> Self {
        let mut x = FormalSum::zero(m);
        x.0[u] = 1;
        x
    }

    pub fn one(m: &Pomonoid) -> Self {
        FormalSum::of(m, m.unit())
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }
}

/// Arithmetic in `ℕ[M]` with multiplicities bounded by a threshold, beyond
/// which operations report saturation instead of silently wrapping.
#[derive(Debug, Clone)]
pub struct FormalSums<'a> {
    m: &'a Pomonoid,
    upsets: Vec<u32>,
    threshold: u64,
}

impl<'a> FormalSums<'a> {
    pub fn new(m: &'a Pomonoid, threshold: u64) -> Result<Self> {
        let n = m.size();
        if n > MAX_UPSET_CARRIER {
            return Err(Error::Cap {
                what: "carrier for up-set enumeration".into(),
                size: n,
                cap: MAX_UPSET_CARRIER,
            });
        }
        let upsets = (0..1u32 << n)
            .filter(|&s| {
                (0..n).all(|x| s >> x & 1 == 0 || (0..n).all(|y| !m.leq(x, y) || s >> y & 1 == 1))
            })
            .collect();
        Ok(FormalSums { m, upsets, threshold })
    }

    pub fn upsets(&self) -> &[u32] {
        &self.upsets
    }

    fn check(&self, x: &FormalSum) -> Result<()> {
        if x.0.len() != self.m.size() {
            return Err(Error::Shape(format!(
                "formal sum over {} elements in a monoid of {}",
                x.0.len(),
                self.m.size()
            )));
        }
        Ok(())
    }

    fn bounded(&self, v: u64) -> Result<u64> {
        if v > self.threshold {
            return Err(Error::Saturation {
                threshold: usize::try_from(self.threshold).unwrap_or(usize::MAX),
            });
        }
        Ok(v)
    }

    pub fn add(&self, x: &FormalSum, y: &FormalSum) -> Result<FormalSum> {
        self.check(x)?;
        self.check(y)?;
        x.0.iter()
            .zip(&y.0)
            .map(|(a, b)| self.bounded(a + b))
            .collect::<Result<_>>()
            .map(FormalSum)
    }

    /// The convolution `(xy)_w = Σ_{uv = w} x_u y_v`.
    pub fn mul(&self, x: &FormalSum, y: &FormalSum) -> Result<FormalSum> {
        self.check(x)?;
        self.check(y)?;
        let mut out = vec![0u64; self.m.size()];
        for (u, &a) in x.0.iter().enumerate().filter(|(_, &a)| a > 0) {
            for (v, &b) in y.0.iter().enumerate().filter(|(_, &b)| b > 0) {
                let w = self.m.mul(u, v);
                out[w] = self.bounded(out[w] + a * b)?;
            }
        }
        Ok(FormalSum(out))
    }

    /// `x ≤ y` iff every up-set carries at least as much weight in `y`.
    pub fn leq(&self, x: &FormalSum, y: &FormalSum) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        let mass = |z: &FormalSum, u: u32| -> u64 { (0..self.m.size()).filter(|&i| u >> i & 1 == 1).map(|i| z.0[i]).sum() };
        Ok(self.upsets.iter().all(|&u| mass(x, u) <= mass(y, u)))
    }

    /// Sums with multiplicities in `{0, 1}`: one per subset of `M`.
    pub fn subset_sums(&self) -> Vec<FormalSum> {
        let n = self.m.size();
        (0..1u32 << n)
            .map(|s| FormalSum((0..n).map(|i| u64::from(s >> i & 1)).collect()))
            .collect()
    }

    /// Checks the positive-posemiring laws on `samples`, multiplying by the
    /// single terms `[v]`, `0` and `1`, and returns the first failure.
    pub fn validate(&self, samples: &[FormalSum]) -> Result<Result<(), Violation>> {
        let m = self.m;
        let zero = FormalSum::zero(m);
        let mut factors: Vec<FormalSum> = m.elements().map(|v| FormalSum::of(m, v)).collect();
        factors.push(zero.clone());
        let fail = |axiom: &str, parts: &[&FormalSum]| {
            Ok(Err(Violation::new(axiom, parts.iter().map(|p| format!("{:?}", p.0)).collect())))
        };
        for x in samples {
            if !self.leq(&zero, x)? {
                return fail("positivity", &[x]);
            }
            if self.mul(&FormalSum::one(m), x)? != *x || self.mul(x, &FormalSum::one(m))? != *x {
                return fail("unit", &[x]);
            }
            if self.mul(&zero, x)? != zero {
                return fail("absorbing zero", &[x]);
            }
            for y in samples {
                let (xy, yx) = (self.leq(x, y)?, self.leq(y, x)?);
                if xy && yx && x != y {
                    return fail("antisymmetry", &[x, y]);
                }
                for z in &factors {
                    if self.mul(&self.add(x, y)?, z)? != self.add(&self.mul(x, z)?, &self.mul(y, z)?)? {
                        return fail("right distributivity", &[x, y, z]);
                    }
                    if self.mul(z, &self.add(x, y)?)? != self.add(&self.mul(z, x)?, &self.mul(z, y)?)? {
                        return fail("left distributivity", &[x, y, z]);
                    }
                    if xy {
                        if !self.leq(&self.add(x, z)?, &self.add(y, z)?)? {
                            return fail("addition is monotone", &[x, y, z]);
                        }
                        if !self.leq(&self.mul(x, z)?, &self.mul(y, z)?)? || !self.leq(&self.mul(z, x)?, &self.mul(z, y)?)? {
                            return fail("multiplication is monotone", &[x, y, z]);
                        }
                    }
                }
            }
        }
        // the inclusion M → ℕ[M] is an order embedding
        for a in m.elements() {
            for b in m.elements() {
                let (fa, fb) = (FormalSum::of(m, a), FormalSum::of(m, b));
                if self.leq(&fa, &fb)? != m.leq(a, b) {
                    return fail("order embedding", &[&fa, &fb]);
                }
                if self.mul(&fa, &fb)? != FormalSum::of(m, m.mul(a, b)) {
                    return fail("multiplicative embedding", &[&fa, &fb]);
                }
            }
        }
        Ok(Ok(()))
    }
}
