use anyhow::{bail, Context, Result};
use pmfgalois::constructions::{
    downset_completion, grillet_monoid, thm64_spotcheck, weak_irreducibility, FormalSums, Spotcheck,
    WeakIrreducibility,
};
use pmfgalois::galois::canonical::{canonical_leq, canonical_leq_scan, member_via_invariants, WordPair};
use pmfgalois::galois::preserve::{preserves_par, Preservation};
use pmfgalois::galois::{pol_bounded, restriction_report, unary_fragment_check, BoundedClone, FragmentVerdict};
use pmfgalois::io::{self, PomonoidDoc, WeightDoc};
use pmfgalois::order::preorder::{subdirectly_irreducible, Quasivariety, SiVerdict};
use pmfgalois::order::{OrderKind, Pomonoid};
use pmfgalois::total::ancilla::PermutationClone;
use pmfgalois::total::extend::{bijective_extension, extend_one_point, injective_extension, total_extension, Extension};
use pmfgalois::weights::builtin;
use pmfgalois::{gates, Config, Error, Pmf};
use serde_json::{json, Value};

use crate::input;
use crate::output::{pmf_doc, pmf_json, witness_json, witness_table, Outcome, Verdict};

const GROUP_CAP: usize = 1 << 16;

fn clone_of(gens: &[String], cfg: &Config) -> Result<BoundedClone> {
    let gens = input::pmfs(gens, cfg)?;
    Ok(BoundedClone::closure(cfg.base, cfg.caps, &gens)?)
}

/// Members of every densely indexed shape, in listing order.
fn listing(c: &BoundedClone) -> Result<(Vec<Value>, usize)> {
    let mut shapes = Vec::new();
    let mut total = 0;
    for fam in c.families() {
        let (n, m) = (fam.shape().n, fam.shape().m);
        if fam.count().is_none() {
            shapes.push(json!({ "shape": [n, m], "members": Value::Null }));
            continue;
        }
        let mut members = c.members(n, m)?;
        members.sort_by(Pmf::listing_cmp);
        total += members.len();
        let rendered: Vec<Value> = members.iter().map(|f| json!(f.render_pairs())).collect();
        shapes.push(json!({ "shape": [n, m], "count": members.len(), "members": rendered }));
    }
    Ok((shapes, total))
}

fn report_json(c: &BoundedClone) -> Result<Value> {
    Ok(serde_json::to_value(restriction_report(c)?)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Kind {
    Auto,
    Pmf,
    Weight,
    Pomonoid,
    Semiring,
    Nilsemigroup,
    Grillet,
}

fn detect(doc: &Value) -> Result<Kind> {
    let has = |k: &str| doc.get(k).is_some();
    Ok(if has("pairs") {
        Kind::Pmf
    } else if has("values") {
        Kind::Weight
    } else if has("omega") {
        Kind::Grillet
    } else if has("unit") && (has("add") || has("zero")) {
        Kind::Semiring
    } else if has("unit") {
        Kind::Pomonoid
    } else if has("zero") {
        Kind::Nilsemigroup
    } else {
        bail!("cannot tell what kind of document this is; pass --kind")
    })
}

/// Parses and checks a document. Axiom violations are a negative verdict;
/// unreadable or ill-typed input is an error.
pub fn validate(file: &str, kind: Kind) -> Result<Outcome> {
    let path = std::path::Path::new(file);
    let doc: Value = io::read_json(path)?;
    let kind = if kind == Kind::Auto { detect(&doc)? } else { kind };
    let dir = io::parent_dir(path);
    let parse = |e: serde_json::Error| Error::Malformed(format!("{file}: {e}"));
    let checked: std::result::Result<Value, Error> = match kind {
        Kind::Pmf => serde_json::from_value::<io::PmfDoc>(doc)
            .map_err(parse)?
            .build()
            .map(|f| json!({ "kind": "pmf", "shape": [f.n(), f.m()], "pairs": f.len(), "predicates": f.predicates() })),
        Kind::Weight => serde_json::from_value::<WeightDoc>(doc)
            .map_err(parse)?
            .build(&dir)
            .map(|w| json!({ "kind": "weight", "arity": w.arity(), "target_size": w.pomonoid().size() })),
        Kind::Pomonoid => serde_json::from_value::<PomonoidDoc>(doc)
            .map_err(parse)?
            .pomonoid()
            .map(|m| json!({ "kind": "pomonoid", "size": m.size(), "commutative": m.is_commutative() })),
        Kind::Semiring => serde_json::from_value::<PomonoidDoc>(doc)
            .map_err(parse)?
            .semiring()
            .map(|s| json!({ "kind": "semiring", "size": s.size(), "predicates": s.predicates() })),
        Kind::Nilsemigroup => serde_json::from_value::<io::NilsemigroupDoc>(doc)
            .map_err(parse)?
            .build()
            .map(|s| json!({ "kind": "nilsemigroup", "size": s.size() })),
        Kind::Grillet => serde_json::from_value::<io::GrilletDoc>(doc)
            .map_err(parse)?
            .build(&dir)
            .and_then(|(omega, sigma)| {
                sigma.validate(&omega)?;
                let m = grillet_monoid(&omega, &sigma)?;
                Ok(json!({ "kind": "grillet", "size": m.size() }))
            }),
        Kind::Auto => unreachable!("resolved above"),
    };
    match checked {
        Ok(mut v) => {
            v["valid"] = json!(true);
            Ok(Outcome::positive(v))
        }
        Err(Error::Axiom(violation)) => Ok(Outcome::new(
            Verdict::Negative,
            json!({ "valid": false, "axiom": violation.axiom, "witness": violation.witness }),
        )),
        Err(e) => Err(e.into()),
    }
}

pub fn preserve(pmf: &str, weights: &[String], cfg: &Config) -> Result<Outcome> {
    let f = input::pmf(pmf, cfg)?;
    let ws = input::weights(weights, cfg)?;
    let mut results = Vec::new();
    let mut tables = Vec::new();
    let mut all = true;
    for (name, w) in weights.iter().zip(&ws) {
        match preserves_par(&f, w, cfg.budget)? {
            Preservation::Holds => results.push(json!({ "weight": name, "preserved": true })),
            Preservation::Fails(wit) => {
                all = false;
                tables.push(format!("{name}: {}", witness_table(&f, &wit)));
                results.push(json!({ "weight": name, "preserved": false, "witness": witness_json(&f, w, &wit) }));
            }
        }
    }
    let mut out = Outcome::new(Verdict::of(all), json!({ "pmf": pmf_json(&f), "preserved": all, "results": results }));
    out.tables = tables;
    Ok(out)
}

pub fn pol(weights: &[String], members: bool, cfg: &Config) -> Result<Outcome> {
    let ws = input::weights(weights, cfg)?;
    let c = pol_bounded(cfg.base, cfg.caps, &ws, cfg.budget)?;
    let families: Vec<Value> = c
        .families()
        .iter()
        .map(|fam| {
            json!({
                "shape": [fam.shape().n, fam.shape().m],
                "skipped": fam.is_skipped(),
                "count": fam.count(),
                "maximal": fam.maximal().map(|ms| ms.iter().map(|f| json!(f.render_pairs())).collect::<Vec<_>>()),
            })
        })
        .collect();
    let mut payload = json!({
        "weights": weights,
        "caps": [cfg.caps.n_max, cfg.caps.m_max],
        "complete": c.is_complete(),
        "families": families,
        "report": report_json(&c)?,
    });
    if members {
        payload["members"] = json!(listing(&c)?.0);
    }
    Ok(Outcome::positive(payload))
}

pub fn closure(gens: &[String], permutation: bool, ancilla: bool, n_max: Option<usize>, cfg: &Config) -> Result<Outcome> {
    if permutation || ancilla {
        return Ok(permutation_closure(gens, ancilla, n_max, cfg)?.0);
    }
    let c = clone_of(gens, cfg)?;
    let (shapes, total) = listing(&c)?;
    Ok(Outcome::positive(json!({
        "generators": gens,
        "caps": [cfg.caps.n_max, cfg.caps.m_max],
        "complete": c.is_complete(),
        "member_count": total,
        "shapes": shapes,
        "report": report_json(&c)?,
    })))
}

fn permutation_closure(
    gens: &[String],
    ancilla: bool,
    n_max: Option<usize>,
    cfg: &Config,
) -> Result<(Outcome, PermutationClone)> {
    let fs = input::pmfs(gens, cfg)?;
    let n_max = n_max.unwrap_or_else(|| fs.iter().map(Pmf::n).max().unwrap_or(0).max(cfg.caps.n_max));
    let c = PermutationClone::closure(cfg.base, n_max, &fs, ancilla, GROUP_CAP)?;
    let groups: Vec<Value> = (0..=n_max)
        .map(|n| {
            let members: Vec<Value> = c.members(n).iter().map(|f| json!(f.render_pairs())).collect();
            json!({ "n": n, "order": c.order(n), "members": members })
        })
        .collect();
    let verified = c.verify_groups().and_then(|()| c.verify_ancilla());
    let out = Outcome::new(
        Verdict::of(verified.is_ok()),
        json!({
            "generators": gens,
            "ancilla": ancilla,
            "n_max": n_max,
            "complete": c.is_complete(),
            "ancilla_closed": c.is_ancilla_closed(),
            "ancilla_steps": c.ancilla_steps().len(),
            "groups": groups,
            "verified": verified.as_ref().is_ok(),
            "violation": verified.err().map(|v| v.to_string()),
        }),
    );
    Ok((out, c))
}

pub fn ancilla_close(gens: &[String], n_max: Option<usize>, cfg: &Config) -> Result<Outcome> {
    let (mut out, c) = permutation_closure(gens, true, n_max, cfg)?;
    let steps: Vec<Value> = c
        .ancilla_steps()
        .iter()
        .map(|s| {
            json!({
                "source": pmf_json(&s.source),
                "ancilla": s.ancilla,
                "ancilla_width": s.ancilla_width,
                "derived": pmf_json(&s.derived),
            })
        })
        .collect();
    out.payload["steps"] = json!(steps);
    Ok(out)
}

pub fn member(pmf: &str, gens: &[String], cfg: &Config) -> Result<Outcome> {
    let f = input::pmf(pmf, cfg)?;
    let c = clone_of(gens, cfg)?;
    let direct = c.member(&f)?;
    let via = member_via_invariants(&c, &f)?;
    if direct != via {
        bail!("membership and its invariant characterization disagree on {f}");
    }
    Ok(Outcome::new(
        Verdict::of(direct),
        json!({ "pmf": pmf_json(&f), "generators": gens, "member": direct, "via_invariants": via, "complete": c.is_complete() }),
    ))
}

pub fn canonical_cmp(pmf: &str, gens: &[String], cfg: &Config) -> Result<Outcome> {
    let f = input::pmf(pmf, cfg)?;
    let c = clone_of(gens, cfg)?;
    let wp = WordPair::of_pmf(&f);
    let leq = canonical_leq(&c, &wp)?;
    let scan = canonical_leq_scan(&c, &wp)?;
    if leq != scan {
        bail!("the canonical comparison and its scan disagree on {f}");
    }
    Ok(Outcome::new(
        Verdict::of(leq),
        json!({ "pmf": pmf_json(&f), "generators": gens, "k": wp.k, "left": wp.left, "right": wp.right, "leq": leq }),
    ))
}

pub fn extend(pmf: &str, gens: &[String], cfg: &Config) -> Result<Outcome> {
    let f = input::pmf(pmf, cfg)?;
    let c = clone_of(gens, cfg)?;
    if !c.member(&f)? {
        bail!("{pmf} is not a member of the clone generated by {gens:?}");
    }
    Ok(match total_extension(&c, &f)? {
        Some(g) => Outcome::positive(json!({ "pmf": pmf_json(&f), "extension": pmf_json(&g), "document": pmf_doc(&g) })),
        None => {
            let domain = f.domain();
            let mut blocked = None;
            for a in (0..f.in_count()).filter(|a| !domain.contains(a)) {
                if extend_one_point(&c, &f, a)?.is_none() {
                    blocked = Some(a);
                    break;
                }
            }
            let b = f.base().size();
            Outcome::new(
                Verdict::Negative,
                json!({
                    "pmf": pmf_json(&f),
                    "extension": Value::Null,
                    "blocked_input": blocked.map(|a| pmfgalois::tuple::render(b, f.n(), a)),
                }),
            )
        }
    })
}

pub fn match_extend(pmf: &str, gens: &[String], bijective: bool, cfg: &Config) -> Result<Outcome> {
    let f = input::pmf(pmf, cfg)?;
    let c = clone_of(gens, cfg)?;
    let ext = if bijective {
        bijective_extension(&c, &f)?
    } else {
        injective_extension(&c, &f)?
    };
    let b = f.base().size();
    let render = |xs: &[usize], arity: usize| -> Vec<String> {
        xs.iter().map(|&x| pmfgalois::tuple::render(b, arity, x)).collect()
    };
    let (verdict, detail) = match &ext {
        Extension::Found(g) => (Verdict::Positive, json!({ "found": pmf_json(g), "document": pmf_doc(g) })),
        Extension::Hall { inputs, images } => (
            Verdict::Negative,
            json!({ "hall_violation": { "inputs": render(inputs, f.n()), "images": render(images, f.m()) } }),
        ),
        Extension::Blocked => (Verdict::Negative, json!({ "blocked": true })),
        Extension::SizeMismatch => (Verdict::Negative, json!({ "size_mismatch": true })),
    };
    let mut payload = json!({ "pmf": pmf_json(&f), "bijective": bijective });
    payload["result"] = detail;
    Ok(Outcome::new(verdict, payload))
}

fn default_quasivariety(m: &Pomonoid) -> Quasivariety {
    [
        Quasivariety::CommutativeTriviallyOrdered,
        Quasivariety::TriviallyOrdered,
        Quasivariety::Commutative,
        Quasivariety::All,
    ]
    .into_iter()
    .find(|q| q.contains(m))
    .expect("every pomonoid lies in the largest quasivariety")
}

pub fn si(pomonoid: &str, quasivariety: Option<&str>) -> Result<Outcome> {
    let m = input::pomonoid(pomonoid)?;
    let q = match quasivariety {
        Some(s) => Quasivariety::parse(s)?,
        None => default_quasivariety(&m),
    };
    let name = |a: usize| m.name(a).to_string();
    let base = json!({ "size": m.size(), "quasivariety": q.name() });
    Ok(match subdirectly_irreducible(&m, q)? {
        SiVerdict::Irreducible { monolith: (a, b), extension } => {
            let pairs: Vec<(String, String)> = extension.pairs().map(|(x, y)| (name(x), name(y))).collect();
            let mut p = base;
            p["si"] = json!(true);
            p["monolith"] = json!([name(a), name(b)]);
            p["monolith_extension"] = json!(pairs);
            Outcome::positive(p)
        }
        SiVerdict::Reducible { separating } => {
            let parts: Vec<Value> = separating
                .iter()
                .map(|((a, b), _, size)| json!({ "pair": [name(*a), name(*b)], "quotient_size": size }))
                .collect();
            let mut p = base;
            p["si"] = json!(false);
            p["separating"] = json!(parts);
            Outcome::new(Verdict::Negative, p)
        }
        SiVerdict::Trivial => {
            let mut p = base;
            p["si"] = json!(false);
            p["trivial"] = json!(true);
            Outcome::new(Verdict::Negative, p)
        }
    })
}

pub fn grillet(file: Option<&str>, d: usize, g: usize) -> Result<Outcome> {
    let (omega, sigma) = input::grillet(file, d, g)?;
    sigma.validate(&omega).map_err(Error::Axiom)?;
    let m = grillet_monoid(&omega, &sigma)?;
    let weak = match weak_irreducibility(&omega, &sigma) {
        WeakIrreducibility::Holds => json!("holds"),
        WeakIrreducibility::Fails { alpha, beta } => {
            json!({ "fails": [omega_name(&omega, alpha), omega_name(&omega, beta)] })
        }
        WeakIrreducibility::Inapplicable(why) => json!({ "inapplicable": why }),
    };
    let spot = thm64_spotcheck(&omega, &sigma)?;
    let (verdict, check) = match &spot {
        Spotcheck::Confirmed { monolith: (a, b) } => (
            Verdict::Positive,
            json!({ "confirmed": true, "monolith": [m.name(*a), m.name(*b)] }),
        ),
        Spotcheck::Refuted(why) => (Verdict::Negative, json!({ "confirmed": false, "refuted": why })),
        Spotcheck::Inapplicable(why) => (Verdict::Negative, json!({ "confirmed": false, "inapplicable": why })),
    };
    Ok(Outcome::new(
        verdict,
        json!({
            "omega": omega.names(),
            "group_order": sigma.group().size(),
            "size": m.size(),
            "elements": m.names(),
            "weak_irreducibility": weak,
            "spotcheck": check,
            "monoid": PomonoidDoc::of(&m),
        }),
    ))
}

fn omega_name(omega: &pmfgalois::constructions::Nilsemigroup, a: usize) -> String {
    if a == omega.unit() {
        "1".into()
    } else {
        omega.name(a).to_string()
    }
}

pub fn downset(pomonoid: &str, cfg: &Config) -> Result<Outcome> {
    let m = input::pomonoid(pomonoid)?;
    let (s, emb) = downset_completion(&m, cfg.monoid_cap)?;
    let embedding: Vec<(String, String)> = m
        .elements()
        .map(|x| (m.name(x).to_string(), s.mult().name(emb[x]).to_string()))
        .collect();
    Ok(Outcome::positive(json!({
        "size": s.size(),
        "embedding": embedding,
        "semiring": PomonoidDoc::of_semiring(&s),
    })))
}

pub fn nsum_leq(pomonoid: &str, x: &str, y: &str, cfg: &Config) -> Result<Outcome> {
    let m = input::pomonoid(pomonoid)?;
    let sums = FormalSums::new(&m, cfg.nat_threshold as u64)?;
    let (a, b) = (input::formal_sum(&m, x)?, input::formal_sum(&m, y)?);
    let leq = sums.leq(&a, &b)?;
    Ok(Outcome::new(
        Verdict::of(leq),
        json!({ "x": x, "y": y, "x_multiplicities": a.0, "y_multiplicities": b.0, "leq": leq }),
    ))
}

/// Names understood by `catalog`, with what they emit.
pub fn catalog_names(cfg: &Config) -> Result<Vec<(String, &'static str)>> {
    let mut out: Vec<(String, &'static str)> = builtin::catalog(cfg.base, cfg.nat_threshold)?
        .into_iter()
        .map(|(label, _)| (label, "weight"))
        .collect();
    out.extend(input::GATES.iter().map(|g| (g.to_string(), "pmf")));
    Ok(out)
}

pub fn catalog(name: Option<&str>, k: Option<usize>, order: Option<&str>, cfg: &Config) -> Result<Outcome> {
    let Some(name) = name else {
        let names: Vec<Value> = catalog_names(cfg)?
            .into_iter()
            .map(|(n, kind)| json!({ "name": n, "kind": kind }))
            .collect();
        return Ok(Outcome::positive(json!({ "catalog": names })));
    };
    if let Ok(f) = gates::by_name(name, cfg.base) {
        return Ok(Outcome::positive(pmf_doc(&f)));
    }
    let w = if k.is_some() || order.is_some() {
        let params = builtin::Params {
            k,
            order: order.map(OrderKind::parse).transpose()?.unwrap_or(OrderKind::Leq),
            threshold: cfg.nat_threshold,
            ..Default::default()
        };
        builtin::by_name(name, cfg.base, &params)?
    } else {
        input::weight(name, cfg).with_context(|| format!("unknown catalog entry {name:?}"))?
    };
    Ok(Outcome::positive(serde_json::to_value(WeightDoc::of(&w))?))
}

pub fn report(gens: &[String], cfg: &Config) -> Result<Outcome> {
    let c = clone_of(gens, cfg)?;
    let fragment = match unary_fragment_check(&c)? {
        FragmentVerdict::Holds => json!("holds"),
        FragmentVerdict::Fails(f) => json!({ "fails": pmf_json(&f) }),
        FragmentVerdict::Inapplicable(why) => json!({ "inapplicable": why }),
    };
    let maximal: Vec<Value> = c.all_maximal().map(pmf_json).collect();
    let closed = c.verify_closed();
    let mut report = report_json(&c)?;
    report["unary_fragment"] = fragment;
    report["maximal"] = json!(maximal);
    report["generators"] = json!(gens);
    Ok(Outcome::new(Verdict::of(closed.is_ok()), report))
}
