use std::collections::BTreeSet;

use super::build::{row, tail, to_naturals, union, Item};
use super::{require_fixed_set, FactorError, FactorizationResult, Target};
use crate::class::{class_member, classify_structural, Cardinal, ClassSpec};
use crate::scheme::{OrbitFamily, Scheme, Word};
use crate::seq::Sequence;

fn spec(n: u64) -> ClassSpec {
    ClassSpec::s(Cardinal::Aleph0, Cardinal::Fin(n))
}

/// `[g1, g2]` with `g1 ∘ g2` acting as `families`, whose fixed points are
/// `outside ∪ res`.
///
/// For every cycle length with only finitely many cycles, `g1` gets a fresh
/// family of cycles of that length on a row of `res` and `g2` the inverse
/// family. Both then have only infinitely repeated cycle lengths, all
/// dividing the order.
fn extend(
    families: &[OrbitFamily],
    outside: Sequence,
    res: &Sequence,
) -> Result<Word, FactorError> {
    let lengths: BTreeSet<u32> = families
        .iter()
        .filter_map(|f| match f {
            OrbitFamily::FinCycle { elements } => Some(elements.len() as u32),
            _ => None,
        })
        .collect();
    let mut fresh = Vec::new();
    for (t, &d) in lengths.iter().enumerate() {
        fresh.push(OrbitFamily::rows(d, row(res, t)?));
    }
    let rest = tail(res, lengths.len())?;
    let mut g1 = families.to_vec();
    g1.extend(fresh.iter().cloned());
    let mut g2_fixed = vec![outside.clone(), rest.clone()];
    g2_fixed.extend(families.iter().flat_map(OrbitFamily::support));
    Ok(Word::new(vec![
        Scheme::new(g1, Some(union(vec![outside, rest])?)).named("g1"),
        Scheme::new(
            fresh.iter().map(OrbitFamily::inverse).collect(),
            Some(union(g2_fixed)?),
        )
        .named("g2"),
    ]))
}

pub(crate) fn order_n_word(f: &Scheme, n: u64, n_window: u64) -> Result<Word, FactorError> {
    let found = classify_structural(f, n_window).order;
    if found != Cardinal::Fin(n) || n < 2 {
        return Err(FactorError::WrongOrder { expected: n, found });
    }
    let fixed = require_fixed_set(f)?.clone();
    if class_member(&f.census(), &spec(n)) {
        return Ok(Word::new(vec![f.clone()]));
    }
    if fixed.is_infinite() {
        return extend(&f.families, Sequence::empty(), &to_naturals(fixed));
    }
    // Finite fixed set: split one family into its even- and odd-indexed
    // cycles. The odd ones become a third factor and their support is the
    // reservoir for the rest.
    let (pos, length, base) = f
        .families
        .iter()
        .enumerate()
        .find_map(|(k, fam)| match Item::from_family(fam) {
            Some(Item::Family { length, base }) => Some((k, length, base)),
            _ => None,
        })
        .ok_or_else(|| {
            FactorError::InsufficientReservoir("finite support and finite fixed set".into())
        })?;
    let halves = [Item::half(length, &base, 0), Item::half(length, &base, 1)];
    let [Item::Family { base: even, .. }, Item::Family { base: odd, .. }] = halves else {
        unreachable!("halves of a family are families")
    };
    let mut x_families = f.families.clone();
    x_families[pos] = OrbitFamily::rows(length, even);
    let x_support: Vec<Sequence> = x_families.iter().flat_map(OrbitFamily::support).collect();
    let y_fixed = union(std::iter::once(fixed.clone()).chain(x_support).collect())?;
    let y = Scheme::new(vec![OrbitFamily::rows(length, odd.clone())], Some(y_fixed)).named("g3");
    let x = Scheme::new(x_families, Some(union(vec![fixed.clone(), odd.clone()])?));
    let mut word = if class_member(&x.census(), &spec(n)) {
        Word::new(vec![x.named("g1")])
    } else {
        extend(&x.families, fixed, &odd)?
    };
    word.factors.push(y);
    Ok(word)
}

pub fn factor_order_n(
    f: &Scheme,
    n: u64,
    windows: &[u64],
) -> Result<FactorizationResult, FactorError> {
    let w = windows.iter().copied().max().unwrap_or(256);
    let word = order_n_word(f, n, w)?;
    Ok(FactorizationResult::assemble(
        f,
        word,
        Target::SOmega(n),
        windows,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::OrbitSize;

    #[test]
    fn packed_census_is_returned_alone() {
        let f = Scheme::new(
            vec![OrbitFamily::rows(2, Sequence::nat(1, 1))],
            Some(Sequence::nat(-1, 0)),
        );
        let r = factor_order_n(&f, 2, &[64]).unwrap();
        assert_eq!(r.word.factors, vec![f]);
        assert!(r.passed());
    }

    #[test]
    fn two_transpositions_extend_over_a_row() {
        let fixed = union(vec![Sequence::nat(-1, 0), Sequence::nat(1, 5)]).unwrap();
        let f = Scheme::new(
            vec![
                OrbitFamily::fin_cycle(vec![1, 2]).unwrap(),
                OrbitFamily::fin_cycle(vec![3, 4]).unwrap(),
            ],
            Some(fixed),
        );
        let r = factor_order_n(&f, 2, &[256]).unwrap();
        assert_eq!(r.word.len(), 2);
        assert!(r.passed(), "{:?} {:?}", r.verification, r.certificates);
        for g in &r.word.factors {
            assert_eq!(g.census().count(OrbitSize::Finite(2)), Cardinal::Aleph0);
            assert!(g.validate(128).passed());
        }
    }

    #[test]
    fn order_six_with_a_lone_three_cycle() {
        let f = Scheme::new(
            vec![
                OrbitFamily::fin_cycle(vec![1, 2, 3]).unwrap(),
                OrbitFamily::rows(2, Sequence::nat(1, 4)),
            ],
            Some(Sequence::nat(-1, 0)),
        );
        assert!(!class_member(&f.census(), &spec(6)));
        let r = factor_order_n(&f, 6, &[256]).unwrap();
        assert!(r.word.len() <= 3);
        assert!(r.passed(), "{:?} {:?}", r.verification, r.certificates);
    }

    #[test]
    fn finite_fixed_set_uses_three_factors() {
        let f = Scheme::new(
            vec![
                OrbitFamily::fin_cycle(vec![1, 2, 3]).unwrap(),
                OrbitFamily::rows(2, Sequence::nat(1, 4)),
                OrbitFamily::rows(2, Sequence::nat(-1, 0)),
            ],
            Some(Sequence::empty()),
        );
        let r = factor_order_n(&f, 6, &[256]).unwrap();
        assert_eq!(r.word.len(), 3);
        assert!(r.passed(), "{:?} {:?}", r.verification, r.certificates);
        for g in &r.word.factors {
            assert!(g.validate(128).passed(), "{:?}", g.validate(128).violations);
        }
    }

    #[test]
    fn wrong_order() {
        let f = Scheme::new(
            vec![OrbitFamily::rows(3, Sequence::nat(1, 1))],
            Some(Sequence::nat(-1, 0)),
        );
        assert!(matches!(
            factor_order_n(&f, 2, &[16]),
            Err(FactorError::WrongOrder { expected: 2, .. })
        ));
    }
}
