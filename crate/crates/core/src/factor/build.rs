//! Sequence plumbing shared by the constructions.

use crate::scheme::OrbitFamily;
use crate::seq::{Domain, SeqError, Sequence};

/// Re-indexes an infinite sequence over the naturals.
pub(crate) fn to_naturals(s: Sequence) -> Sequence {
    match s.domain() {
        Domain::Integers => Sequence::reindex(s, Sequence::nat_to_int()),
        _ => s,
    }
}

/// Re-indexes an infinite sequence over the integers.
pub(crate) fn to_integers(s: Sequence) -> Sequence {
    match s.domain() {
        Domain::Naturals => Sequence::reindex(s, Sequence::int_to_nat()),
        _ => s,
    }
}

/// An enumeration of the union of pairwise disjoint ranges.
///
/// Finite parts are materialized into one list and infinite parts are
/// interleaved over the naturals, so two calls with parts of the same shapes
/// produce enumerations that line up index by index.
pub(crate) fn union(parts: Vec<Sequence>) -> Result<Sequence, SeqError> {
    let mut finite = Vec::new();
    let mut infinite = Vec::new();
    for p in parts {
        if p.is_infinite() {
            infinite.push(to_naturals(p));
        } else {
            finite.extend(p.materialize()?);
        }
    }
    if infinite.is_empty() {
        return Ok(Sequence::Finite { elements: finite });
    }
    let joined = if infinite.len() == 1 {
        infinite.pop().unwrap()
    } else {
        Sequence::Interleave { parts: infinite }
    };
    if finite.is_empty() {
        return Ok(joined);
    }
    let spliced = Sequence::splice(
        Sequence::reindex(joined.clone(), Sequence::nat(2, 0)),
        finite,
        Sequence::reindex(joined, Sequence::nat(2, 1)),
    )?;
    Ok(Sequence::reindex(spliced, Sequence::nat_to_int()))
}

/// Row `t` of the dyadic splitting of `res`.
pub(crate) fn row(res: &Sequence, t: usize) -> Result<Sequence, SeqError> {
    let t = u32::try_from(t).map_err(|_| SeqError::Overflow)?;
    Sequence::dyadic_row(res.clone(), t)
}

/// The part of `res` left over after rows `0..used` are taken.
pub(crate) fn tail(res: &Sequence, used: usize) -> Result<Sequence, SeqError> {
    if used == 0 {
        return Ok(res.clone());
    }
    if used > 61 {
        return Err(SeqError::Overflow);
    }
    let step = 1i64 << used;
    Ok(Sequence::reindex(
        res.clone(),
        Sequence::nat(step, step - 1),
    ))
}

/// A moved cycle or cycle family, with cycles as explicit element lists.
#[derive(Clone, Debug)]
pub(crate) enum Item {
    Cycle(Vec<i64>),
    Family { length: u32, base: Sequence },
}

impl Item {
    pub(crate) fn from_family(f: &OrbitFamily) -> Option<Item> {
        match f {
            OrbitFamily::FinCycle { elements } => Some(Item::Cycle(elements.clone())),
            OrbitFamily::FinCycleFamily {
                length,
                indexer: crate::indexer::FamilyIndexer::Rows { base, .. },
            } => Some(Item::Family {
                length: *length,
                base: base.clone(),
            }),
            _ => None,
        }
    }

    pub(crate) fn support(&self) -> Sequence {
        match self {
            Item::Cycle(xs) => Sequence::Finite {
                elements: xs.clone(),
            },
            Item::Family { base, .. } => base.clone(),
        }
    }

    /// Cycles with even (`parity = 0`) or odd index inside a family.
    pub(crate) fn half(length: u32, base: &Sequence, parity: i64) -> Item {
        let l = length as i64;
        let parts = (0..l)
            .map(|j| Sequence::nat(2 * l, parity * l + j))
            .collect();
        Item::Family {
            length,
            base: Sequence::reindex(base.clone(), Sequence::Interleave { parts }),
        }
    }
}
