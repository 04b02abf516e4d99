//! Loading pmfs, weights, pomonoids and Grillet data from files or shorthand names.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use pmfgalois::constructions::{FactorSet, FormalSum, Nilsemigroup};
use pmfgalois::io::{self, GrilletDoc, PmfDoc, PomonoidDoc, WeightDoc};
use pmfgalois::order::pomonoid::{self, Pomonoid};
use pmfgalois::order::OrderKind;
use pmfgalois::weights::{builtin, Weight};
use pmfgalois::{gates, Config, Pmf};

pub const GATES: [&str; 16] = [
    "not", "cnot", "cnot-rev", "toffoli", "fredkin", "xor", "and", "swap", "delta2", "id1", "id2", "pi20", "pi21",
    "const0", "const1", "discard",
];

pub const POMONOIDS: [&str; 7] = ["trivial", "chain2", "cyclic:N", "zN", "nat-add:T", "nat-mul:T", "bool-and"];

fn is_file(s: &str) -> bool {
    Path::new(s).is_file()
}

/// A pmf from a JSON file or a gate name.
pub fn pmf(arg: &str, cfg: &Config) -> Result<Pmf> {
    if is_file(arg) {
        let doc: PmfDoc = io::read_json(Path::new(arg))?;
        return doc.build().with_context(|| format!("{arg}: invalid pmf"));
    }
    gates::by_name(arg, cfg.base).map_err(|e| anyhow!("{arg:?} is neither a file nor a gate name ({e})"))
}

pub fn pmfs(args: &[String], cfg: &Config) -> Result<Vec<Pmf>> {
    args.iter().map(|a| pmf(a, cfg)).collect()
}

/// A weight from a JSON file, a catalog label such as `delta<=` or
/// `mod3`, or a builtin name with default parameters.
pub fn weight(arg: &str, cfg: &Config) -> Result<Weight> {
    if is_file(arg) {
        let path = Path::new(arg);
        let doc: WeightDoc = io::read_json(path)?;
        return doc.build(&io::parent_dir(path)).with_context(|| format!("{arg}: invalid weight"));
    }
    if let Some((_, w)) = builtin::catalog(cfg.base, cfg.nat_threshold)?
        .into_iter()
        .find(|(label, _)| label == arg)
    {
        return Ok(w);
    }
    if let Some(c) = arg.strip_prefix("mod").and_then(|c| c.parse().ok()) {
        return Ok(builtin::modc(cfg.base, c)?);
    }
    let params = builtin::Params {
        threshold: cfg.nat_threshold,
        ..Default::default()
    };
    builtin::by_name(arg, cfg.base, &params).map_err(|e| anyhow!("{arg:?} is neither a file nor a weight name ({e})"))
}

pub fn weights(args: &[String], cfg: &Config) -> Result<Vec<Weight>> {
    args.iter().map(|a| weight(a, cfg)).collect()
}

fn numeric_suffix(arg: &str, prefix: &str) -> Option<Result<usize>> {
    let rest = arg.strip_prefix(prefix)?;
    Some(rest.parse().map_err(|_| anyhow!("{arg:?}: expected a number after {prefix:?}")))
}

/// A pomonoid from a JSON file or a shorthand such as `cyclic:4`.
pub fn pomonoid(arg: &str) -> Result<Pomonoid> {
    if is_file(arg) {
        let doc: PomonoidDoc = io::read_json(Path::new(arg))?;
        return doc.pomonoid().with_context(|| format!("{arg}: invalid pomonoid"));
    }
    let m = match arg {
        "trivial" => pomonoid::trivial(),
        "chain2" => pomonoid::chain2(),
        "bool-and" => pomonoid::boolean_and(OrderKind::Leq),
        _ => {
            if let Some(c) = numeric_suffix(arg, "cyclic:").or_else(|| numeric_suffix(arg, "z")) {
                pomonoid::cyclic(c?)?
            } else if let Some(t) = numeric_suffix(arg, "nat-add:") {
                pomonoid::nat_add(t?, OrderKind::Leq)?
            } else if let Some(t) = numeric_suffix(arg, "nat-mul:") {
                pomonoid::nat_mul(t?, OrderKind::Leq)?
            } else {
                bail!("{arg:?} is neither a file nor a pomonoid shorthand ({})", POMONOIDS.join(", "));
            }
        }
    };
    Ok(m)
}

/// A Grillet triple from a JSON file, or the truncated nilsemigroup of
/// depth `d` over the cyclic group of order `g` with trivial factor set.
pub fn grillet(file: Option<&str>, d: usize, g: usize) -> Result<(Nilsemigroup, FactorSet)> {
    match file {
        Some(arg) => {
            let path = Path::new(arg);
            let doc: GrilletDoc = io::read_json(path)?;
            doc.build(&io::parent_dir(path)).with_context(|| format!("{arg}: invalid Grillet data"))
        }
        None => {
            let omega = Nilsemigroup::truncation(d)?;
            let sigma = FactorSet::trivial(&omega, &pomonoid::cyclic(g)?)?;
            Ok((omega, sigma))
        }
    }
}

/// A formal sum written `a+a+b` or `2*a+b`; the empty string is the empty sum.
pub fn formal_sum(m: &Pomonoid, text: &str) -> Result<FormalSum> {
    let mut sum = FormalSum::zero(m);
    if text.trim().is_empty() {
        return Ok(sum);
    }
    for term in text.split('+').map(str::trim) {
        let (count, name) = match term.split_once('*') {
            Some((c, n)) => (c.trim().parse::<u64>().map_err(|_| anyhow!("bad multiplicity in {term:?}"))?, n.trim()),
            None => (1, term),
        };
        let u = m.index_of(name).with_context(|| format!("term {term:?}"))?;
        sum.0[u] += count;
    }
    Ok(sum)
}
