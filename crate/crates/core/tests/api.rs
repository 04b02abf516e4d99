use std::path::PathBuf;

use pmfgalois::constructions::{grillet_monoid, thm64_spotcheck, FactorSet, Nilsemigroup, Spotcheck};
use pmfgalois::galois::{pol_bounded, preserves, BoundedClone};
use pmfgalois::io::{self, GrilletDoc, PmfDoc, WeightDoc};
use pmfgalois::order::pomonoid::cyclic;
use pmfgalois::weights::builtin;
use pmfgalois::{gates, BaseSet, Caps, Pmf};
use proptest::prelude::*;

const BUDGET: u64 = 1 << 30;

fn b2() -> BaseSet {
    BaseSet::boolean()
}

fn caps22() -> Caps {
    Caps::new(2, 2).unwrap()
}

fn scratch() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("api-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn pmf_strategy() -> impl Strategy<Value = Pmf> {
    (0usize..=2, 0usize..=2, any::<u64>()).prop_map(|(n, m, bits)| {
        let pairs = (1usize << n) * (1usize << m);
        let mask = if pairs >= 64 { bits } else { bits & ((1 << pairs) - 1) };
        Pmf::from_mask(b2(), n, m, mask).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pol_membership_is_preservation(f in pmf_strategy(), which in 0usize..8) {
        let catalog = builtin::catalog(b2(), 9).unwrap();
        let (_, w) = &catalog[which * catalog.len() / 8];
        let c = pol_bounded(b2(), caps22(), std::slice::from_ref(w), BUDGET).unwrap();
        prop_assert_eq!(c.member(&f).unwrap(), preserves(&f, w, BUDGET).unwrap().holds());
    }

    #[test]
    fn closures_of_preserving_generators_preserve(f in pmf_strategy(), g in pmf_strategy()) {
        let w = builtin::modc(b2(), 2).unwrap();
        let gens: Vec<Pmf> = [f, g].into_iter().filter(|h| preserves(h, &w, BUDGET).unwrap().holds()).collect();
        let c = BoundedClone::closure(b2(), caps22(), &gens).unwrap();
        for top in c.all_maximal() {
            prop_assert!(preserves(top, &w, BUDGET).unwrap().holds(), "{top} escapes");
        }
    }
}

#[test]
fn documents_resolve_relative_paths() {
    let dir = scratch();
    let w = builtin::conservative(b2(), 9).unwrap();
    let mut doc = WeightDoc::of(&w);
    let target = match &doc.pomonoid {
        io::Source::Inline(p) => p.clone(),
        io::Source::Path(_) => unreachable!("of() inlines the target"),
    };
    std::fs::write(dir.join("nat.json"), io::to_json(&target)).unwrap();
    doc.pomonoid = io::Source::Path("nat.json".into());
    std::fs::write(dir.join("conservative.json"), io::to_json(&doc)).unwrap();

    let back: WeightDoc = io::read_json(&dir.join("conservative.json")).unwrap();
    let w2 = back.build(&dir).unwrap();
    assert_eq!(w2.values(), w.values());
    for gate in [gates::fredkin(), gates::cnot(), gates::swap()] {
        let f = PmfDoc::of(&gate).build().unwrap();
        assert_eq!(
            preserves(&f, &w2, BUDGET).unwrap().holds(),
            preserves(&gate, &w, BUDGET).unwrap().holds()
        );
    }
    assert!(io::read_json::<WeightDoc>(&dir.join("missing.json")).is_err());
}

#[test]
fn grillet_documents_build_the_same_monoid() {
    let omega = Nilsemigroup::truncation(3).unwrap();
    let g = cyclic(2).unwrap();
    let sigma = FactorSet::trivial(&omega, &g).unwrap();
    let text = format!(
        r#"{{"omega": {}, "group": {}}}"#,
        io::to_json(&io::NilsemigroupDoc::of(&omega)),
        io::to_json(&io::PomonoidDoc::of(&g))
    );
    let doc: GrilletDoc = io::parse_json(&text).unwrap();
    let (omega2, sigma2) = doc.build(&scratch()).unwrap();
    let m = grillet_monoid(&omega, &sigma).unwrap();
    let m2 = grillet_monoid(&omega2, &sigma2).unwrap();
    assert_eq!(m.size(), 1 + 2 * 3);
    assert!(m.same_tables(&m2));
    assert!(matches!(thm64_spotcheck(&omega2, &sigma2).unwrap(), Spotcheck::Confirmed { .. }));
}
