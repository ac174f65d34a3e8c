use super::involution::involution_to_ringed_word;
use super::order::order_n_word;
use super::ringed::ringed_to_lf_word;
use super::wild::lf_to_wild_word;
use super::{in_target, FactorError, FactorizationResult, Target};
use crate::class::classify_structural;
use crate::scheme::{Scheme, Word};

/// Replaces every factor by its own factorization.
fn refine(
    word: Word,
    step: impl Fn(&Scheme) -> Result<Word, FactorError>,
) -> Result<Word, FactorError> {
    let mut out = Vec::new();
    for g in &word.factors {
        out.extend(step(g)?.factors);
    }
    Ok(Word::new(out))
}

/// Factors `f` along `I_2 → ringed → local-finite → wild`, starting at the
/// most specific class of `f` that has an edge toward `target`.
pub(crate) fn chain_word(f: &Scheme, target: Target, n_window: u64) -> Result<Word, FactorError> {
    if in_target(target, f, n_window) {
        return Ok(Word::new(vec![f.clone()]));
    }
    let r = classify_structural(f, n_window);
    let to_wild = |g: &Scheme| {
        if in_target(Target::Wild, g, n_window) {
            Ok(Word::new(vec![g.clone()]))
        } else {
            lf_to_wild_word(g, n_window)
        }
    };
    match target {
        Target::Wild if r.is_local_finite => lf_to_wild_word(f, n_window),
        Target::Wild if r.is_ringed => refine(ringed_to_lf_word(f, n_window)?, to_wild),
        Target::LocalFinite if r.is_ringed => ringed_to_lf_word(f, n_window),
        Target::Ringed if r.in_i_n == Some(2) || f.is_identity() => {
            involution_to_ringed_word(f, n_window)
        }
        Target::SOmega(n) => order_n_word(f, n, n_window),
        _ => Err(FactorError::NoChain(target)),
    }
}

/// The full chain from an involution: ringed factors, each split into two
/// local-finite factors, each of those into wild factors.
pub(crate) fn full_chain_word(f: &Scheme, n_window: u64) -> Result<Word, FactorError> {
    let ringed = involution_to_ringed_word(f, n_window)?;
    let lf = refine(ringed, |g| ringed_to_lf_word(g, n_window))?;
    refine(lf, |g| lf_to_wild_word(g, n_window))
}

pub fn chain_factor(
    f: &Scheme,
    target: Target,
    windows: &[u64],
) -> Result<FactorizationResult, FactorError> {
    let n = windows.iter().copied().max().unwrap_or(256);
    let word = chain_word(f, target, n)?;
    Ok(FactorizationResult::assemble(f, word, target, windows))
}

/// Wild factorization of an involution through every edge of the chain.
pub fn chain_factor_through_ringed(
    f: &Scheme,
    windows: &[u64],
) -> Result<FactorizationResult, FactorError> {
    let n = windows.iter().copied().max().unwrap_or(256);
    let word = full_chain_word(f, n)?;
    Ok(FactorizationResult::assemble(
        f,
        word,
        Target::Wild,
        windows,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::OrbitFamily;
    use crate::seq::Sequence;

    fn successor() -> Scheme {
        Scheme::new(
            vec![OrbitFamily::inf_cycle(Sequence::int(1, 0))],
            Some(Sequence::empty()),
        )
    }

    #[test]
    fn successor_to_lf_is_one_edge() {
        let r = chain_factor(&successor(), Target::LocalFinite, &[64]).unwrap();
        assert_eq!(r.word.len(), 2);
        assert!(r.passed());
    }

    #[test]
    fn successor_to_wild() {
        let r = chain_factor(&successor(), Target::Wild, &[256]).unwrap();
        assert!(r.word.len() <= 8);
        assert!(r.passed(), "{:?}", r.verification);
    }

    #[test]
    fn idempotent_target() {
        let r = chain_factor(&successor(), Target::Ringed, &[64]).unwrap();
        assert_eq!(r.word.factors, vec![successor()]);
    }

    #[test]
    fn involution_through_every_edge() {
        let f = Scheme::new(
            vec![OrbitFamily::rows(2, Sequence::nat_to_int())],
            Some(Sequence::empty()),
        );
        let r = chain_factor_through_ringed(&f, &[128]).unwrap();
        assert!(r.word.len() <= 16);
        assert!(r.passed(), "{:?}", r.verification);
        let direct = chain_factor(&f, Target::Wild, &[128]).unwrap();
        assert!(direct.word.len() <= 8 && direct.passed());
    }
}
