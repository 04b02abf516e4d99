//! JSON documents for pmfs, pomonoids, semirings, weights, nilsemigroups
//! and factor sets.
//!
//! Elements of finite structures are referred to by name and tuples are
//! digit arrays, so documents are readable and independent of the internal
//! numbering. Nested structures may be given inline or as a path, resolved
//! relative to the directory of the referring file.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::config::BaseSet;
use crate::constructions::{FactorSet, Nilsemigroup};
use crate::error::{Error, Result};
use crate::order::{Pomonoid, Semiring};
use crate::pmf::Pmf;
use crate::tuple;
use crate::weights::{Target, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmfDoc {
    pub base: usize,
    pub n: usize,
    pub m: usize,
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
}

impl PmfDoc {
    pub fn of(f: &Pmf) -> Self {
        let b = f.base().size();
        PmfDoc {
            base: b,
            n: f.n(),
            m: f.m(),
            pairs: f
                .pairs()
                .map(|(x, y)| (tuple::decode(b, f.n(), x), tuple::decode(b, f.m(), y)))
                .collect(),
        }
    }

    pub fn build(&self) -> Result<Pmf> {
        let base = BaseSet::new(self.base)?;
        Pmf::from_tuples(base, self.n, self.m, self.pairs.iter().map(|(x, y)| (x.as_slice(), y.as_slice())))
    }
}

/// A pomonoid, or a semiring when `zero` and `add` are present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PomonoidDoc {
    pub elements: Vec<String>,
    pub unit: String,
    pub mul: Vec<Vec<String>>,
    /// Every related pair, reflexive ones included; omitted means the
    /// trivial order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(String, String)>>,
    /// The idempotent element standing for every value past a truncation
    /// threshold; products reaching it are reported instead of compared.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub saturation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub add: Option<Vec<Vec<String>>>,
}

fn lookup(names: &[String], name: &str) -> Result<usize> {
    names
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| Error::UnknownName(format!("element {name:?}")))
}

fn table(names: &[String], rows: &[Vec<String>], what: &str) -> Result<Vec<usize>> {
    let n = names.len();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Shape(format!("{what} table must be {n}×{n}")));
    }
    rows.iter().flatten().map(|s| lookup(names, s)).collect()
}

fn name_table(n: usize, names: impl Fn(usize) -> String, entry: impl Fn(usize, usize) -> usize) -> Vec<Vec<String>> {
    (0..n).map(|a| (0..n).map(|b| names(entry(a, b))).collect()).collect()
}

impl PomonoidDoc {
    pub fn of(m: &Pomonoid) -> Self {
        let name = |x: usize| m.name(x).to_string();
        PomonoidDoc {
            elements: m.names().to_vec(),
            unit: name(m.unit()),
            mul: name_table(m.size(), name, |a, b| m.mul(a, b)),
            leq: Some(
                m.elements()
                    .flat_map(|a| m.elements().map(move |b| (a, b)))
                    .filter(|&(a, b)| m.leq(a, b))
                    .map(|(a, b)| (name(a), name(b)))
                    .collect(),
            ),
            saturation: m.saturation().map(name),
            zero: None,
            add: None,
        }
    }

    pub fn of_semiring(s: &Semiring) -> Self {
        let m = s.mult();
        let name = |x: usize| m.name(x).to_string();
        PomonoidDoc {
            zero: Some(name(s.zero())),
            add: Some(name_table(m.size(), name, |a, b| s.add(a, b))),
            ..PomonoidDoc::of(m)
        }
    }

    pub fn of_target(t: &Target) -> Self {
        match t {
            Target::Monoid(m) => PomonoidDoc::of(m),
            Target::Semiring(s) => PomonoidDoc::of_semiring(s),
        }
    }

    pub fn pomonoid(&self) -> Result<Pomonoid> {
        let names = &self.elements;
        let n = names.len();
        let mul = table(names, &self.mul, "multiplication")?;
        let mut leq = vec![false; n * n];
        match &self.leq {
            Some(pairs) => {
                for (a, b) in pairs {
                    leq[lookup(names, a)? * n + lookup(names, b)?] = true;
                }
            }
            None => (0..n).for_each(|a| leq[a * n + a] = true),
        }
        let m = Pomonoid::new(names.clone(), lookup(names, &self.unit)?, mul, leq)?;
        Ok(match &self.saturation {
            Some(s) => {
                let z = lookup(names, s)?;
                if m.mul(z, z) != z {
                    return Err(Error::Malformed(format!("saturation element {s:?} is not idempotent")));
                }
                m.with_saturation(z)
            }
            None => m,
        })
    }

    pub fn semiring(&self) -> Result<Semiring> {
        let (Some(zero), Some(add)) = (&self.zero, &self.add) else {
            return Err(Error::Malformed("a semiring needs \"zero\" and \"add\"".into()));
        };
        let m = self.pomonoid()?;
        let add = table(&self.elements, add, "addition")?;
        Semiring::new(m, lookup(&self.elements, zero)?, add)
    }

    pub fn is_semiring(&self) -> bool {
        self.zero.is_some() || self.add.is_some()
    }

    pub fn target(&self) -> Result<Target> {
        Ok(if self.is_semiring() {
            Target::Semiring(Arc::new(self.semiring()?))
        } else {
            Target::Monoid(Arc::new(self.pomonoid()?))
        })
    }
}

/// A nested document, inline or by path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    Path(String),
    Inline(T),
}

impl<T: DeserializeOwned + Clone> Source<T> {
    pub fn resolve(&self, dir: &Path) -> Result<T> {
        match self {
            Source::Inline(t) => Ok(t.clone()),
            Source::Path(p) => read_json(&dir.join(p)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDoc {
    pub base: usize,
    pub k: usize,
    pub pomonoid: Source<PomonoidDoc>,
    /// Element names in tuple-code order.
    pub values: Vec<String>,
}

impl WeightDoc {
    pub fn of(w: &Weight) -> Self {
        let m = w.pomonoid();
        WeightDoc {
            base: w.base().size(),
            k: w.arity(),
            pomonoid: Source::Inline(PomonoidDoc::of_target(w.target())),
            values: w.values().iter().map(|&v| m.name(v).to_string()).collect(),
        }
    }

    pub fn build(&self, dir: &Path) -> Result<Weight> {
        let doc = self.pomonoid.resolve(dir)?;
        let target = doc.target()?;
        let values = self
            .values
            .iter()
            .map(|s| lookup(&doc.elements, s))
            .collect::<Result<_>>()?;
        Weight::new(BaseSet::new(self.base)?, self.k, target, values)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilsemigroupDoc {
    pub elements: Vec<String>,
    pub mul: Vec<Vec<String>>,
    pub zero: String,
}

impl NilsemigroupDoc {
    pub fn of(s: &Nilsemigroup) -> Self {
        let name = |x: usize| s.name(x).to_string();
        NilsemigroupDoc {
            elements: s.names().to_vec(),
            mul: name_table(s.size(), name, |a, b| s.mul(a, b)),
            zero: name(s.zero()),
        }
    }

    pub fn build(&self) -> Result<Nilsemigroup> {
        let mul = table(&self.elements, &self.mul, "multiplication")?;
        Nilsemigroup::new(self.elements.clone(), mul, lookup(&self.elements, &self.zero)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSetDoc {
    pub group: Source<PomonoidDoc>,
    /// Entries `[α, β, g]`; the unit of `Ω¹` is named `"1"` and unlisted
    /// entries are the identity of the group.
    #[serde(default)]
    pub sigma: Vec<(String, String, String)>,
}

impl FactorSetDoc {
    pub fn of(omega: &Nilsemigroup, s: &FactorSet) -> Self {
        let g = s.group();
        FactorSetDoc {
            group: Source::Inline(PomonoidDoc::of(g)),
            sigma: s
                .entries(omega)
                .into_iter()
                .map(|(a, b, x)| (omega.name(a).into(), omega.name(b).into(), g.name(x).into()))
                .collect(),
        }
    }

    pub fn build(&self, omega: &Nilsemigroup, dir: &Path) -> Result<FactorSet> {
        let g = self.group.resolve(dir)?.pomonoid()?;
        let entries = self
            .sigma
            .iter()
            .map(|(a, b, x)| Ok((omega.index_of(a)?, omega.index_of(b)?, g.index_of(x)?)))
            .collect::<Result<Vec<_>>>()?;
        FactorSet::from_entries(omega, &g, &entries)
    }
}

/// Input of the Grillet construction: `Ω` plus a factor set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrilletDoc {
    pub omega: Source<NilsemigroupDoc>,
    #[serde(flatten)]
    pub factor_set: FactorSetDoc,
}

impl GrilletDoc {
    pub fn build(&self, dir: &Path) -> Result<(Nilsemigroup, FactorSet)> {
        let omega = self.omega.resolve(dir)?.build()?;
        let sigma = self.factor_set.build(&omega, dir)?;
        Ok((omega, sigma))
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| match e {
        Error::Malformed(m) => Error::Malformed(format!("{}: {m}", path.display())),
        e => e,
    })
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

/// Directory against which paths inside `path` are resolved.
pub fn parent_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;
    use crate::order::pomonoid::{chain2, cyclic};
    use crate::order::semiring;
    use crate::order::OrderKind;
    use crate::weights::builtin;

    #[test]
    fn pmf_round_trip() {
        for f in [gates::cnot(), gates::fredkin(), gates::xor(), Pmf::empty(BaseSet::new(3).unwrap(), 1, 2).unwrap()] {
            let doc = PmfDoc::of(&f);
            let back: PmfDoc = parse_json(&to_json(&doc)).unwrap();
            assert_eq!(back.build().unwrap(), f);
        }
        let doc = PmfDoc::of(&gates::cnot());
        assert_eq!(doc.pairs[3], (vec![1, 1], vec![1, 0]));
    }

    #[test]
    fn pmf_rejects_bad_digits() {
        let doc: PmfDoc = parse_json(r#"{"base":2,"n":1,"m":1,"pairs":[[[2],[0]]]}"#).unwrap();
        assert!(doc.build().is_err());
        assert!(parse_json::<PmfDoc>(r#"{"base":2,"n":1"#).is_err());
    }

    #[test]
    fn pomonoid_round_trip() {
        for m in [chain2(), cyclic(3).unwrap()] {
            let back = PomonoidDoc::of(&m).pomonoid().unwrap();
            assert_eq!(back, m);
        }
        let s = semiring::nat(3, OrderKind::Leq).unwrap();
        let doc = PomonoidDoc::of_semiring(&s);
        assert!(doc.is_semiring());
        assert_eq!(doc.semiring().unwrap().add_table(), s.add_table());
    }

    #[test]
    fn saturation_must_be_idempotent() {
        use crate::order::pomonoid::nat_add;
        let mut doc = PomonoidDoc::of(&nat_add(3, OrderKind::Leq).unwrap());
        assert_eq!(doc.saturation.as_deref(), Some("3+"));
        assert_eq!(doc.pomonoid().unwrap().saturation(), Some(3));
        doc.saturation = Some("1".into());
        assert!(doc.pomonoid().is_err());
    }

    #[test]
    fn non_orders_are_rejected() {
        let mut doc = PomonoidDoc::of(&cyclic(2).unwrap());
        doc.leq.as_mut().unwrap().retain(|(a, b)| a != b);
        assert!(doc.pomonoid().is_err());
    }

    #[test]
    fn weight_round_trip() {
        let base = BaseSet::boolean();
        for w in [builtin::affine(base), builtin::conservative(base, 9).unwrap(), builtin::delta(base, OrderKind::Geq)] {
            let doc = WeightDoc::of(&w);
            let back: WeightDoc = parse_json(&to_json(&doc)).unwrap();
            assert_eq!(back.build(Path::new(".")).unwrap(), w);
        }
        assert_eq!(WeightDoc::of(&builtin::affine(base)).values.len(), 16);
    }

    #[test]
    fn grillet_round_trip() {
        let omega = Nilsemigroup::truncation(3).unwrap();
        let s = FactorSet::trivial(&omega, &cyclic(2).unwrap()).unwrap();
        let doc = GrilletDoc {
            omega: Source::Inline(NilsemigroupDoc::of(&omega)),
            factor_set: FactorSetDoc::of(&omega, &s),
        };
        let back: GrilletDoc = parse_json(&to_json(&doc)).unwrap();
        let (o, t) = back.build(Path::new(".")).unwrap();
        assert_eq!(o, omega);
        assert_eq!(t, s);
    }
}
