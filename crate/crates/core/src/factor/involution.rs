use super::build::{to_integers, to_naturals, union};
use super::{require_fixed_set, FactorError, FactorizationResult, Target};
use crate::class::classify_structural;
use crate::indexer::FamilyIndexer;
use crate::scheme::{OrbitFamily, Scheme, Word};
use crate::seq::Sequence;

/// Transposition partners: `a` and `b` enumerate the two ends so that every
/// transposition is `(a(k) b(k))`.
struct Pairs {
    a: Sequence,
    b: Sequence,
}

fn pairs(f: &Scheme) -> Result<Pairs, FactorError> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for fam in &f.families {
        match fam {
            OrbitFamily::FinCycle { elements } if elements.len() == 2 => {
                a.push(Sequence::finite(vec![elements[0]])?);
                b.push(Sequence::finite(vec![elements[1]])?);
            }
            OrbitFamily::FinCycleFamily {
                length: 2,
                indexer: FamilyIndexer::Rows { base, .. },
            } => {
                a.push(Sequence::reindex(base.clone(), Sequence::nat(2, 0)));
                b.push(Sequence::reindex(base.clone(), Sequence::nat(2, 1)));
            }
            _ => return Err(FactorError::NotInvolution),
        }
    }
    Ok(Pairs {
        a: union(a)?,
        b: union(b)?,
    })
}

fn nat_pair(a: i64, b: i64) -> Sequence {
    Sequence::Interleave {
        parts: vec![Sequence::nat(2, a), Sequence::nat(2, b)],
    }
}

/// Two single-cycle factors `[g1, g2]` for infinitely many transpositions.
///
/// With the pairs `(A(k) B(k))` the cycles read
/// `g1 = (… A(4) B(3) A(2) B(1) A(0) A(1) B(0) A(3) B(2) A(5) …)`,
/// `g2 = (… B(2) B(3) B(0) B(1) A(0) A(1) A(2) …)`.
/// Fixed points form one more cycle in `g1`, run backwards in `g2`.
fn infinite_case(f: &Scheme, p: Pairs) -> Result<Word, FactorError> {
    let Pairs { a, b } = p;
    let e1 = Sequence::splice(
        Sequence::Interleave {
            parts: vec![
                Sequence::reindex(b.clone(), Sequence::nat(2, 1)),
                Sequence::reindex(a.clone(), Sequence::nat(2, 2)),
            ],
        },
        vec![a.eval(0)?],
        Sequence::Interleave {
            parts: vec![
                Sequence::reindex(a.clone(), Sequence::nat(2, 1)),
                Sequence::reindex(b.clone(), Sequence::nat(2, 0)),
            ],
        },
    )?;
    let e2 = Sequence::splice(Sequence::reindex(b, nat_pair(1, 0)), vec![], a)?;
    let mut g1 = vec![OrbitFamily::inf_cycle(e1)];
    let mut g2 = vec![OrbitFamily::inf_cycle(e2)];
    let fixed = require_fixed_set(f)?;
    let mut residue = Sequence::empty();
    if fixed.is_infinite() {
        let c = OrbitFamily::inf_cycle(to_integers(fixed.clone()));
        g2.push(c.inverse());
        g1.push(c);
    } else {
        let pts = fixed.materialize()?;
        if pts.len() >= 2 {
            let c = OrbitFamily::fin_cycle(pts)?;
            g2.push(c.inverse());
            g1.push(c);
        } else {
            residue = Sequence::finite(pts)?;
        }
    }
    Ok(Word::new(vec![
        Scheme::new(g1, Some(residue.clone())).named("g1"),
        Scheme::new(g2, Some(residue)).named("g2"),
    ]))
}

pub(crate) fn involution_to_ringed_word(f: &Scheme, n_window: u64) -> Result<Word, FactorError> {
    let fixed = require_fixed_set(f)?;
    if f.is_identity() {
        // the identity is not ringed itself
        let succ = Scheme::new(
            vec![OrbitFamily::inf_cycle(Sequence::int(1, 0))],
            Some(Sequence::empty()),
        )
        .named("succ");
        let inv = succ.inverse();
        return Ok(Word::new(vec![succ, inv]));
    }
    if classify_structural(f, n_window).in_i_n != Some(2) {
        return Err(FactorError::NotInvolution);
    }
    let p = pairs(f)?;
    if p.a.is_infinite() {
        return infinite_case(f, p);
    }
    if !fixed.is_infinite() {
        return Err(FactorError::InsufficientReservoir(
            "finitely many transpositions and a finite fixed set".into(),
        ));
    }
    // h = f·h' where h' pairs up the fixed points; both have infinitely many
    // transpositions and h' = h'^-1.
    let extra = OrbitFamily::rows(2, to_naturals(fixed.clone()));
    let mut h_families = f.families.clone();
    h_families.push(extra.clone());
    let h = Scheme::new(h_families, Some(Sequence::empty()));
    let moved: Vec<i64> =
        p.a.materialize()?
            .into_iter()
            .chain(p.b.materialize()?)
            .collect();
    let h_prime = Scheme::new(vec![extra], Some(Sequence::finite(moved)?));
    let first = infinite_case(&h, pairs(&h)?)?;
    let second = infinite_case(&h_prime, pairs(&h_prime)?)?;
    let mut word = first.then_after(second);
    for (k, g) in word.factors.iter_mut().enumerate() {
        g.name = Some(format!("g{}", k + 1));
    }
    Ok(word)
}

pub fn factor_involution_to_ringed(
    f: &Scheme,
    windows: &[u64],
) -> Result<FactorizationResult, FactorError> {
    let n = windows.iter().copied().max().unwrap_or(256);
    let word = involution_to_ringed_word(f, n)?;
    Ok(FactorizationResult::assemble(
        f,
        word,
        Target::Ringed,
        windows,
    ))
}
