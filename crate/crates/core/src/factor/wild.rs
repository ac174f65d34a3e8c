use super::build::{row, tail, to_naturals, union, Item};
use super::{require_fixed_set, FactorError, FactorizationResult, Target};
use crate::class::classify_structural;
use crate::indexer::FamilyIndexer;
use crate::scheme::{OrbitFamily, Scheme, Word};
use crate::seq::Sequence;

/// Word `[P, Q]` with `P ∘ Q` acting as the given cycles and fixing the rest.
///
/// Item `t` draws the reservoir row `R = row(res, t)`, split into `E` (even
/// indices) and `O` (odd indices). A cycle `(x1 … xn)` becomes
/// `P ⊇ (… E(1) E(0) x1 … xn O(0) O(1) …)` and `Q ⊇ (… O(1) O(0) xn E(0) E(1) …)`.
/// Families do the same per cycle, spreading each row over the cycles with
/// the Cantor pairing. `other` enumerates the points outside `res` and the
/// items; they are fixed by both factors. With `pad`, the next row carries a
/// grid family in `P` and its reverse in `Q`, so both factors are wild.
fn absorb(items: &[Item], res: &Sequence, other: Sequence, pad: bool) -> Result<Word, FactorError> {
    let mut p = Vec::new();
    let mut q = Vec::new();
    let mut q_fixed = vec![other.clone()];
    for (t, item) in items.iter().enumerate() {
        let r = row(res, t)?;
        let e = Sequence::reindex(r.clone(), Sequence::nat(2, 0));
        let o = Sequence::reindex(r, Sequence::nat(2, 1));
        match item {
            Item::Cycle(xs) => {
                let (last, init) = xs.split_last().expect("cycles are nonempty");
                p.push(OrbitFamily::inf_cycle(Sequence::splice(
                    e.clone(),
                    xs.clone(),
                    o.clone(),
                )?));
                q.push(OrbitFamily::inf_cycle(Sequence::splice(o, vec![*last], e)?));
                q_fixed.push(Sequence::finite(init.to_vec())?);
            }
            Item::Family { length, base } => {
                let l = *length as i64;
                p.push(OrbitFamily::inf_family(FamilyIndexer::Spliced {
                    left: e.clone(),
                    middle: base.clone(),
                    width: *length,
                    right: o.clone(),
                }));
                q.push(OrbitFamily::inf_family(FamilyIndexer::Spliced {
                    left: o,
                    middle: Sequence::reindex(base.clone(), Sequence::nat(l, l - 1)),
                    width: 1,
                    right: e,
                }));
                for j in 0..l - 1 {
                    q_fixed.push(Sequence::reindex(base.clone(), Sequence::nat(l, j)));
                }
            }
        }
    }
    let mut used = items.len();
    if pad {
        let grid = FamilyIndexer::Grid {
            base: row(res, used)?,
        };
        let fam = OrbitFamily::inf_family(grid);
        q.push(fam.inverse());
        p.push(fam);
        used += 1;
    }
    let rest = tail(res, used)?;
    q_fixed.push(rest.clone());
    Ok(Word::new(vec![
        Scheme::new(p, Some(union(vec![other, rest])?)),
        Scheme::new(q, Some(union(q_fixed)?)),
    ]))
}

pub(crate) fn lf_to_wild_word(f: &Scheme, n_window: u64) -> Result<Word, FactorError> {
    if !classify_structural(f, n_window).is_local_finite {
        return Err(FactorError::NotLocalFinite);
    }
    let fixed = require_fixed_set(f)?;
    let items: Vec<Item> = f
        .families
        .iter()
        .map(|fam| Item::from_family(fam).ok_or(FactorError::NotLocalFinite))
        .collect::<Result<_, _>>()?;
    let has_family = items.iter().any(|i| matches!(i, Item::Family { .. }));
    if fixed.is_infinite() {
        let mut word = absorb(
            &items,
            &to_naturals(fixed.clone()),
            Sequence::empty(),
            !has_family,
        )?;
        word.factors[0].name = Some("P".into());
        word.factors[1].name = Some("Q".into());
        return Ok(word);
    }
    if !has_family {
        return Err(FactorError::InsufficientReservoir(
            "finitely many cycles and a finite fixed set".into(),
        ));
    }
    // Split the cycles by index parity. Each half absorbs its cycles using
    // the other half's support as reservoir.
    let mut halves: [Vec<Item>; 2] = [Vec::new(), Vec::new()];
    let mut fin_cycles = 0;
    for item in &items {
        match item {
            Item::Cycle(_) => {
                halves[fin_cycles % 2].push(item.clone());
                fin_cycles += 1;
            }
            Item::Family { length, base } => {
                halves[0].push(Item::half(*length, base, 0));
                halves[1].push(Item::half(*length, base, 1));
            }
        }
    }
    let side = |absorbed: usize| -> Result<Word, FactorError> {
        let keep = &halves[1 - absorbed];
        let res = union(
            keep.iter()
                .filter(|i| matches!(i, Item::Family { .. }))
                .map(Item::support)
                .collect(),
        )?;
        let mut other = vec![fixed.clone()];
        other.extend(
            keep.iter()
                .filter(|i| matches!(i, Item::Cycle(_)))
                .map(Item::support),
        );
        absorb(&halves[absorbed], &res, union(other)?, false)
    };
    let mut g = side(1)?;
    let mut h = side(0)?;
    g.factors[0].name = Some("g1".into());
    g.factors[1].name = Some("g2".into());
    h.factors[0].name = Some("h1".into());
    h.factors[1].name = Some("h2".into());
    Ok(h.then_after(g))
}

pub fn factor_lf_to_wild(f: &Scheme, windows: &[u64]) -> Result<FactorizationResult, FactorError> {
    let n = windows.iter().copied().max().unwrap_or(256);
    let word = lf_to_wild_word(f, n)?;
    Ok(FactorizationResult::assemble(
        f,
        word,
        Target::Wild,
        windows,
    ))
}
