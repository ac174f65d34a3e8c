mod common;

use std::collections::BTreeMap;

use infperm::class::{Cardinal, OrbitCensus, OrbitSize};
use infperm::scheme::{
    orbit_census, scheme_apply, scheme_inverse, window_orbits, word_apply, OrbitFamily, Scheme,
    Word,
};
use infperm::seq::Sequence;
use proptest::prelude::*;

use common::{all_fixtures, fixture};

fn trans_half() -> Scheme {
    Scheme::new(
        vec![OrbitFamily::rows(2, Sequence::nat(1, 1))],
        Some(Sequence::nat(-1, 0)),
    )
}

#[test]
fn apply_examples() {
    let t = Scheme::new(vec![OrbitFamily::fin_cycle(vec![1, 2]).unwrap()], None);
    assert_eq!(scheme_apply(&t, 1), Ok(2));
    assert_eq!(scheme_apply(&fixture("succ"), 5), Ok(6));
    let f = trans_half();
    assert_eq!(scheme_apply(&f, 3), Ok(4));
    assert_eq!(scheme_apply(&f, 4), Ok(3));
}

#[test]
fn inverse_examples() {
    let c = Scheme::new(vec![OrbitFamily::fin_cycle(vec![1, 2, 3]).unwrap()], None);
    assert_eq!(
        scheme_inverse(&c).families,
        vec![OrbitFamily::fin_cycle(vec![1, 3, 2]).unwrap()]
    );
    let succ = fixture("succ");
    let pred = scheme_inverse(&succ);
    for x in -20..=20 {
        assert_eq!(pred.apply(x), Ok(x - 1));
    }
    assert_eq!(pred.census(), succ.census());
}

#[test]
fn cycles_are_stored_from_their_minimum() {
    let a = OrbitFamily::fin_cycle(vec![5, 2, 9]).unwrap();
    assert_eq!(a, OrbitFamily::fin_cycle(vec![2, 9, 5]).unwrap());
    assert_ne!(a, OrbitFamily::fin_cycle(vec![2, 5, 9]).unwrap());
    assert!(OrbitFamily::fin_cycle(vec![1, 1]).is_err());
}

#[test]
fn window_examples() {
    let t = Scheme::identity().window(3).unwrap();
    assert_eq!(t.entries.len(), 7);
    assert_eq!(t.fixed_points(), 7);

    let succ = fixture("succ").window(2).unwrap();
    let expect: BTreeMap<i64, i64> = (-2..=2).map(|x| (x, x + 1)).collect();
    assert_eq!(succ.entries, expect);

    let t = trans_half().window(4).unwrap();
    let expect: BTreeMap<i64, i64> = [
        (1, 2),
        (2, 1),
        (3, 4),
        (4, 3),
        (0, 0),
        (-1, -1),
        (-2, -2),
        (-3, -3),
        (-4, -4),
    ]
    .into();
    assert_eq!(t.entries, expect);
}

#[test]
fn word_examples() {
    for (name, s) in all_fixtures() {
        let w = Word::new(vec![s.clone(), scheme_inverse(&s)]);
        for x in -64..=64 {
            assert_eq!(word_apply(&w, x), Ok(x), "{name}");
            assert_eq!(word_apply(&Word::new(vec![s.clone()]), x), s.apply(x));
        }
    }
    // rightmost factor first
    let a = Scheme::new(vec![OrbitFamily::fin_cycle(vec![1, 2]).unwrap()], None);
    let b = Scheme::new(vec![OrbitFamily::fin_cycle(vec![2, 3]).unwrap()], None);
    let w = Word::new(vec![a, b]);
    assert_eq!(word_apply(&w, 2), Ok(3));
    assert_eq!(word_apply(&w, 1), Ok(2));
    assert_eq!(word_apply(&w, 3), Ok(1));
}

#[test]
fn validate_examples() {
    let overlap = Scheme::new(
        vec![
            OrbitFamily::fin_cycle(vec![1, 2]).unwrap(),
            OrbitFamily::fin_cycle(vec![2, 3]).unwrap(),
        ],
        None,
    );
    let r = overlap.validate(10);
    assert!(!r.passed());
    assert!(r.violations.iter().any(|v| v.at == Some(2)));

    let r = fixture("succ").validate(100);
    assert!(r.passed() && !r.complement_opaque);

    // non-positives with 0 left out
    let holed = Scheme::new(
        vec![OrbitFamily::rows(2, Sequence::nat(1, 1))],
        Some(Sequence::interleave(vec![Sequence::nat(-1, -1)]).unwrap()),
    );
    let r = holed.validate(50);
    assert!(!r.passed());
    let coverage: Vec<_> = r
        .violations
        .iter()
        .filter(|v| v.check.contains("coverage"))
        .collect();
    assert_eq!(coverage.len(), 1);
    assert_eq!(coverage[0].at, Some(0));

    let opaque = Scheme::new(vec![OrbitFamily::fin_cycle(vec![1, 2]).unwrap()], None);
    assert!(opaque.validate(10).complement_opaque);
}

#[test]
fn census_examples() {
    let two = |c| OrbitCensus::from_pairs([(OrbitSize::Finite(2), c)]).unwrap();
    assert_eq!(orbit_census(&trans_half()), two(Cardinal::Aleph0));
    assert_eq!(
        orbit_census(&fixture("succ")),
        OrbitCensus::from_pairs([(OrbitSize::Infinite, Cardinal::ONE)]).unwrap()
    );
    let mut families = trans_half().families;
    families.push(OrbitFamily::fin_cycle(vec![-1, -2, -3]).unwrap());
    let c = orbit_census(&Scheme::new(families, None));
    assert_eq!(c.count(OrbitSize::Finite(2)), Cardinal::Aleph0);
    assert_eq!(c.count(OrbitSize::Finite(3)), Cardinal::ONE);
}

#[test]
fn window_orbit_examples() {
    let orbits = window_orbits(&trans_half().window(10).unwrap());
    let expect: Vec<Vec<i64>> = (0..5).map(|k| vec![2 * k + 1, 2 * k + 2]).collect();
    assert_eq!(orbits, expect);
    assert!(window_orbits(&fixture("succ").window(50).unwrap()).is_empty());
    let c = Scheme::new(vec![OrbitFamily::fin_cycle(vec![1, 2, 3]).unwrap()], None);
    assert_eq!(window_orbits(&c.window(5).unwrap()), vec![vec![1, 2, 3]]);
}

#[test]
fn fixtures_are_bijective_on_windows() {
    for (name, s) in all_fixtures() {
        let r = s.validate(300);
        assert!(r.passed(), "{name}: {:?}", r.violations);
        let t = s.window(1000).unwrap();
        assert!(t.is_injective(), "{name}");
        let inv = s.inverse();
        for x in -1000..=1000 {
            assert_eq!(inv.apply(s.apply(x).unwrap()), Ok(x), "{name} at {x}");
        }
        let back = inv.inverse();
        assert_eq!(
            (&back.families, &back.fixed_set),
            (&s.families, &s.fixed_set),
            "{name}"
        );
    }
}

#[test]
fn complete_cycles_appear_in_census() {
    for (name, s) in all_fixtures() {
        let census = s.census();
        let mut previous: BTreeMap<usize, usize> = BTreeMap::new();
        for n in [16, 64, 256] {
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for cycle in window_orbits(&s.window(n).unwrap()) {
                if cycle.len() >= 2 {
                    *counts.entry(cycle.len()).or_default() += 1;
                }
            }
            for (&len, &k) in &counts {
                let c = census.count(OrbitSize::Finite(len as u64));
                assert!(
                    c >= Cardinal::Fin(k as u64),
                    "{name}: {k} cycles of length {len} but census {c}"
                );
                assert!(
                    k >= previous.get(&len).copied().unwrap_or(0),
                    "{name}: evidence shrank"
                );
            }
            previous = counts;
        }
    }
}

#[test]
fn support_is_where_a_family_locates() {
    for (name, s) in all_fixtures() {
        for x in -300..=300 {
            let located = s.families.iter().any(|f| f.image(x).unwrap().is_some());
            assert_eq!(s.apply(x).unwrap() != x, located, "{name} at {x}");
        }
    }
}

#[test]
fn fixtures_round_trip_through_json() {
    for (name, s) in all_fixtures() {
        assert_eq!(Scheme::from_json(&s.to_json()).unwrap(), s, "{name}");
    }
}

#[test]
fn scheme_json_format() {
    let s = Scheme::from_json(r#"{"families":[{"kind":"fin_cycle","elements":[1,2]}]}"#).unwrap();
    assert_eq!(s.apply(2), Ok(1));
    assert!(Scheme::from_json(r#"{"families":[{"kind":"fin_cycle","elements":[1,1]}]}"#).is_err());
    let t = fixture("trans_half");
    assert!(matches!(
        t.families[0],
        OrbitFamily::FinCycleFamily { length: 2, .. }
    ));
}

fn fixture_names() -> Vec<String> {
    all_fixtures().into_iter().map(|(n, _)| n).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_compose_associatively(
        picks in proptest::collection::vec(0usize..64, 1..7),
        split in 0usize..7,
        x in -256i64..=256,
    ) {
        let names = fixture_names();
        let factors: Vec<Scheme> = picks.iter().map(|&i| fixture(&names[i % names.len()])).collect();
        let split = split.min(factors.len());
        let whole = Word::new(factors.clone());
        let left = Word::new(factors[..split].to_vec());
        let right = Word::new(factors[split..].to_vec());
        let composed = left.apply(right.apply(x).unwrap()).unwrap();
        prop_assert_eq!(whole.apply(x), Ok(composed));
        prop_assert_eq!(left.then_after(right).apply(x), Ok(composed));
    }
}
