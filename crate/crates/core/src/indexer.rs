//! Two-argument enumerations of cycle families.
//!
//! A family indexer maps `(k, i)` to an integer, injectively: `k` picks the
//! cycle and `i` the position inside it. Finite cycles are indexed by
//! `0 ≤ i < L`, infinite ones by every integer `i`.

use serde::{Deserialize, Serialize};

use crate::report::ValidationReport;
use crate::seq::{Domain, SeqError, Sequence};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyIndexer {
    /// `(k, j) ↦ base(L·k + j)` for `0 ≤ j < L`.
    Rows { row_length: u32, base: Sequence },
    /// `(k, i) ↦ base(2^k·(2·z(i)+1) − 1)` with `z` the zigzag map ℤ → ℕ.
    Grid { base: Sequence },
    /// Row `k` reads `left` backwards at negative `i`, a block of `width`
    /// consecutive `middle` values, then `right`:
    /// `i < 0 ↦ left(π(k, −i−1))`, `0 ≤ i < w ↦ middle(w·k + i)`,
    /// `i ≥ w ↦ right(π(k, i−w))`, where `π` is the Cantor pairing.
    Spliced {
        left: Sequence,
        middle: Sequence,
        width: u32,
        right: Sequence,
    },
    /// `(k, i) ↦ inner(k, −i)`: every infinite cycle traversed backwards.
    Reverse { inner: Box<FamilyIndexer> },
}

/// Zigzag ℤ → ℕ.
pub fn zigzag(i: i128) -> i128 {
    if i >= 0 {
        2 * i
    } else {
        -2 * i - 1
    }
}

pub fn unzigzag(n: i128) -> i128 {
    if n % 2 == 0 {
        n / 2
    } else {
        -(n + 1) / 2
    }
}

/// Cantor pairing ℕ × ℕ → ℕ.
pub fn cantor_pair(k: i128, j: i128) -> i128 {
    let w = k + j;
    w * (w + 1) / 2 + j
}

pub fn cantor_unpair(m: i128) -> (i128, i128) {
    let w = ((8 * m + 1) as u128).isqrt() as i128;
    let mut w = (w - 1) / 2;
    // isqrt rounding guard
    while (w + 1) * (w + 2) / 2 <= m {
        w += 1;
    }
    while w * (w + 1) / 2 > m {
        w -= 1;
    }
    let j = m - w * (w + 1) / 2;
    (w - j, j)
}

impl FamilyIndexer {
    /// Cycle length for row families, `None` for infinite cycles.
    pub fn row_length(&self) -> Option<u32> {
        match self {
            FamilyIndexer::Rows { row_length, .. } => Some(*row_length),
            _ => None,
        }
    }

    pub fn check(&self) -> Result<(), SeqError> {
        let bad = |reason: &str| SeqError::Malformed {
            path: "indexer".into(),
            reason: reason.into(),
        };
        match self {
            FamilyIndexer::Rows { row_length, base } => {
                if *row_length < 2 {
                    return Err(bad("row_length must be at least 2"));
                }
                if base.domain() != Domain::Naturals {
                    return Err(bad("rows base must be indexed by the naturals"));
                }
                base.check()
            }
            FamilyIndexer::Grid { base } => {
                if base.domain() != Domain::Naturals {
                    return Err(bad("grid base must be indexed by the naturals"));
                }
                base.check()
            }
            FamilyIndexer::Spliced {
                left,
                middle,
                width,
                right,
            } => {
                if *width == 0 {
                    return Err(bad("spliced width must be at least 1"));
                }
                for s in [left, middle, right] {
                    if s.domain() != Domain::Naturals {
                        return Err(bad("spliced parts must be indexed by the naturals"));
                    }
                    s.check()?;
                }
                Ok(())
            }
            FamilyIndexer::Reverse { inner } => {
                if inner.row_length().is_some() {
                    return Err(bad("reverse applies to infinite-cycle indexers only"));
                }
                inner.check()
            }
        }
    }

    pub fn eval(&self, k: i64, i: i64) -> Result<i64, SeqError> {
        let limit = crate::seq::DEFAULT_MAGNITUDE_LIMIT;
        self.ev(k as i128, i as i128, limit).map(|v| v as i64)
    }

    fn ev(&self, k: i128, i: i128, limit: i128) -> Result<i128, SeqError> {
        if k < 0 {
            return Err(SeqError::IndexOutOfDomain { index: k });
        }
        match self {
            FamilyIndexer::Rows { row_length, base } => {
                let l = *row_length as i128;
                if !(0..l).contains(&i) {
                    return Err(SeqError::IndexOutOfDomain { index: i });
                }
                base.ev(l * k + i, limit)
            }
            FamilyIndexer::Grid { base } => {
                if k > 120 {
                    return Err(SeqError::Overflow);
                }
                let m = (1i128 << k)
                    .checked_mul(2 * zigzag(i) + 1)
                    .ok_or(SeqError::Overflow)?
                    - 1;
                if m > limit {
                    return Err(SeqError::Overflow);
                }
                base.ev(m, limit)
            }
            FamilyIndexer::Spliced {
                left,
                middle,
                width,
                right,
            } => {
                let w = *width as i128;
                if i < 0 {
                    left.ev(cantor_pair(k, -i - 1), limit)
                } else if i < w {
                    middle.ev(w * k + i, limit)
                } else {
                    right.ev(cantor_pair(k, i - w), limit)
                }
            }
            FamilyIndexer::Reverse { inner } => inner.ev(k, -i, limit),
        }
    }

    /// Recovers `(k, i)` with `eval(k, i) = x`, if `x` is in the family.
    pub fn locate(&self, x: i64) -> Result<Option<(i64, i64)>, SeqError> {
        let limit = crate::seq::DEFAULT_MAGNITUDE_LIMIT;
        Ok(self
            .loc(x as i128, limit)?
            .map(|(k, i)| (k as i64, i as i64)))
    }

    fn loc(&self, x: i128, limit: i128) -> Result<Option<(i128, i128)>, SeqError> {
        Ok(match self {
            FamilyIndexer::Rows { row_length, base } => {
                let l = *row_length as i128;
                base.loc(x, limit)?.map(|m| (m / l, m % l))
            }
            FamilyIndexer::Grid { base } => base.loc(x, limit)?.map(|m| {
                let q = m + 1;
                let k = q.trailing_zeros() as i128;
                let odd = q >> k;
                (k, unzigzag((odd - 1) / 2))
            }),
            FamilyIndexer::Spliced {
                left,
                middle,
                width,
                right,
            } => {
                let w = *width as i128;
                if let Some(m) = middle.loc(x, limit)? {
                    Some((m / w, m % w))
                } else if let Some(m) = left.loc(x, limit)? {
                    let (k, j) = cantor_unpair(m);
                    Some((k, -j - 1))
                } else if let Some(m) = right.loc(x, limit)? {
                    let (k, j) = cantor_unpair(m);
                    Some((k, j + w))
                } else {
                    None
                }
            }
            FamilyIndexer::Reverse { inner } => inner.loc(x, limit)?.map(|(k, i)| (k, -i)),
        })
    }

    /// Validates every underlying sequence on the index window.
    pub fn validate(&self, n_window: u64) -> ValidationReport {
        let mut report = ValidationReport::new(n_window);
        match self {
            FamilyIndexer::Rows { base, .. } | FamilyIndexer::Grid { base } => {
                report.absorb("base", base.validate(n_window))
            }
            FamilyIndexer::Spliced {
                left,
                middle,
                right,
                ..
            } => {
                report.absorb("left", left.validate(n_window));
                report.absorb("middle", middle.validate(n_window));
                report.absorb("right", right.validate(n_window));
            }
            FamilyIndexer::Reverse { inner } => report.absorb("inner", inner.validate(n_window)),
        }
        report
    }
}
