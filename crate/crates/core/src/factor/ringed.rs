use super::build::union;
use super::{FactorError, FactorizationResult, Target};
use crate::class::classify_structural;
use crate::scheme::{OrbitFamily, Scheme, Word};
use crate::seq::Sequence;

/// Word `[f2, f1]` of two local-finite factors with `f2 ∘ f1 = f`.
///
/// Along each infinite cycle `e`, `f1` swaps `e(k)` and `e(−k−1)` and `f2`
/// swaps `e(k+1)` and `e(−k−1)`, fixing `e(0)`. Finite cycles go into `f2`.
pub(crate) fn ringed_to_lf_word(f: &Scheme, n_window: u64) -> Result<Word, FactorError> {
    if !classify_structural(f, n_window).is_ringed {
        return Err(FactorError::NotRinged);
    }
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    let mut fin_support = Vec::new();
    let mut centers = Vec::new();
    for fam in &f.families {
        match fam {
            OrbitFamily::InfCycle { enumeration: e } => {
                let back = Sequence::reindex(e.clone(), Sequence::nat(-1, -1));
                f1.push(OrbitFamily::rows(
                    2,
                    Sequence::Interleave {
                        parts: vec![
                            Sequence::reindex(e.clone(), Sequence::nat(1, 0)),
                            back.clone(),
                        ],
                    },
                ));
                f2.push(OrbitFamily::rows(
                    2,
                    Sequence::Interleave {
                        parts: vec![Sequence::reindex(e.clone(), Sequence::nat(1, 1)), back],
                    },
                ));
                centers.push(e.eval(0)?);
            }
            OrbitFamily::FinCycle { elements } => {
                fin_support.extend_from_slice(elements);
                f2.push(fam.clone());
            }
            _ => return Err(FactorError::NotRinged),
        }
    }
    let (fix1, fix2) = match &f.fixed_set {
        Some(fx) => (
            Some(union(vec![fx.clone(), Sequence::finite(fin_support)?])?),
            Some(union(vec![fx.clone(), Sequence::finite(centers)?])?),
        ),
        None => (None, None),
    };
    Ok(Word::new(vec![
        Scheme::new(f2, fix2).named("f2"),
        Scheme::new(f1, fix1).named("f1"),
    ]))
}

pub fn factor_ringed_to_lf(
    f: &Scheme,
    windows: &[u64],
) -> Result<FactorizationResult, FactorError> {
    let n = windows.iter().copied().max().unwrap_or(256);
    let word = ringed_to_lf_word(f, n)?;
    Ok(FactorizationResult::assemble(
        f,
        word,
        Target::LocalFinite,
        windows,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn successor() -> Scheme {
        Scheme::new(
            vec![OrbitFamily::inf_cycle(Sequence::int(1, 0))],
            Some(Sequence::empty()),
        )
    }

    #[test]
    fn successor_known_values() {
        let r = factor_ringed_to_lf(&successor(), &[64]).unwrap();
        assert_eq!(r.word.len(), 2);
        let (f2, f1) = (&r.word.factors[0], &r.word.factors[1]);
        assert_eq!(f1.apply(5), Ok(-6));
        assert_eq!(f2.apply(-6), Ok(6));
        assert_eq!(r.word.apply(5), Ok(6));
        assert!(r.passed());
        assert_eq!(f2.apply(0), Ok(0));
        assert!(f1.validate(64).passed() && f2.validate(64).passed());
    }

    #[test]
    fn rejects_cofinite_fixed_set() {
        let f = Scheme::new(
            vec![OrbitFamily::fin_cycle(vec![1, 2, 3]).unwrap()],
            Some(Sequence::nat(-1, 0)),
        );
        assert_eq!(
            factor_ringed_to_lf(&f, &[64]).unwrap_err(),
            FactorError::NotRinged
        );
    }
}
