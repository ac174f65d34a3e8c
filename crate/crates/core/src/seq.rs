//! Injective integer sequences as closed combinator expressions.
//!
//! Every enumerator in the crate (cycle enumerations, fixed sets, reservoirs)
//! is a [`Sequence`]. Evaluation is total on the domain and every node
//! supports exact inverse lookup, so membership tests never need a search.

use std::collections::HashMap;
use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::report::{Evidence, ValidationReport};

/// Largest magnitude any index or value may reach during evaluation.
pub const DEFAULT_MAGNITUDE_LIMIT: i128 = 1 << 62;

/// Largest accepted `row` of a [`Sequence::DyadicRow`].
pub const MAX_DYADIC_ROW: u32 = 61;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SeqError {
    #[error("index {index} is outside the sequence domain")]
    IndexOutOfDomain { index: i128 },
    #[error("value or index magnitude exceeds the evaluation limit")]
    Overflow,
    #[error("{path}: {reason}")]
    Malformed { path: String, reason: String },
}

fn malformed(path: &str, reason: impl Into<String>) -> SeqError {
    SeqError::Malformed {
        path: path.to_string(),
        reason: reason.into(),
    }
}

/// Index set of an [`Sequence::Affine`] node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexDomain {
    #[serde(rename = "nat")]
    Naturals,
    #[serde(rename = "int")]
    Integers,
}

/// The index set of an arbitrary sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Domain {
    Finite(usize),
    Naturals,
    Integers,
}

impl Domain {
    pub fn contains(self, i: i128) -> bool {
        match self {
            Domain::Finite(len) => i >= 0 && i < len as i128,
            Domain::Naturals => i >= 0,
            Domain::Integers => true,
        }
    }

    pub fn is_infinite(self) -> bool {
        !matches!(self, Domain::Finite(_))
    }
}

impl From<IndexDomain> for Domain {
    fn from(d: IndexDomain) -> Self {
        match d {
            IndexDomain::Naturals => Domain::Naturals,
            IndexDomain::Integers => Domain::Integers,
        }
    }
}

/// An injective map from an index set into the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Sequence {
    /// `i ↦ a·i + b`.
    Affine { a: i64, b: i64, domain: IndexDomain },
    /// `i ↦ elements[i]`.
    Finite { elements: Vec<i64> },
    /// `i ↦ parts[i mod m](i div m)`; every part is indexed by the naturals.
    Interleave { parts: Vec<Sequence> },
    /// Bi-infinite: negative indices read `left`, then `middle`, then `right`.
    Splice {
        left: Box<Sequence>,
        middle: Vec<i64>,
        right: Box<Sequence>,
    },
    /// `i ↦ base(index(i))`.
    Reindex {
        base: Box<Sequence>,
        index: Box<Sequence>,
    },
    /// `j ↦ base(2^row·(2j+1) − 1)`: row `row` of the dyadic splitting of `base`.
    DyadicRow { base: Box<Sequence>, row: u32 },
}

impl Sequence {
    pub fn affine(a: i64, b: i64, domain: IndexDomain) -> Result<Sequence, SeqError> {
        if a == 0 {
            return Err(malformed("affine", "coefficient a must be nonzero"));
        }
        Ok(Sequence::Affine { a, b, domain })
    }

    /// Shorthand for an affine map over the naturals; panics on `a == 0`.
    pub fn nat(a: i64, b: i64) -> Sequence {
        Sequence::affine(a, b, IndexDomain::Naturals).expect("nonzero coefficient")
    }

    /// Shorthand for an affine map over the integers; panics on `a == 0`.
    pub fn int(a: i64, b: i64) -> Sequence {
        Sequence::affine(a, b, IndexDomain::Integers).expect("nonzero coefficient")
    }

    pub fn finite(elements: Vec<i64>) -> Result<Sequence, SeqError> {
        let s = Sequence::Finite { elements };
        s.check()?;
        Ok(s)
    }

    pub fn empty() -> Sequence {
        Sequence::Finite {
            elements: Vec::new(),
        }
    }

    pub fn interleave(parts: Vec<Sequence>) -> Result<Sequence, SeqError> {
        if parts.len() == 1 {
            let only = parts.into_iter().next().unwrap();
            if only.domain() != Domain::Naturals {
                return Err(malformed(
                    "interleave",
                    "parts must be indexed by the naturals",
                ));
            }
            return Ok(only);
        }
        let s = Sequence::Interleave { parts };
        s.check_shallow("interleave")?;
        Ok(s)
    }

    pub fn splice(left: Sequence, middle: Vec<i64>, right: Sequence) -> Result<Sequence, SeqError> {
        let s = Sequence::Splice {
            left: Box::new(left),
            middle,
            right: Box::new(right),
        };
        s.check_shallow("splice")?;
        Ok(s)
    }

    /// Composes `base ∘ index`, folding affine chains so built trees stay shallow.
    pub fn reindex(base: Sequence, index: Sequence) -> Sequence {
        if let Sequence::Affine { a: 1, b: 0, domain } = &index {
            if Domain::from(*domain) == base.domain() {
                return base;
            }
        }
        match (&base, &index) {
            (Sequence::Affine { a, b, .. }, Sequence::Affine { a: c, b: d, domain }) => {
                if let (Some(ac), Some(adb)) = (
                    a.checked_mul(*c),
                    a.checked_mul(*d).and_then(|ad| ad.checked_add(*b)),
                ) {
                    return Sequence::Affine {
                        a: ac,
                        b: adb,
                        domain: *domain,
                    };
                }
            }
            (
                Sequence::Reindex {
                    base: inner,
                    index: first,
                },
                _,
            ) => {
                let composed = Sequence::reindex((**first).clone(), index);
                return Sequence::reindex((**inner).clone(), composed);
            }
            _ => {}
        }
        Sequence::Reindex {
            base: Box::new(base),
            index: Box::new(index),
        }
    }

    pub fn dyadic_row(base: Sequence, row: u32) -> Result<Sequence, SeqError> {
        if row > MAX_DYADIC_ROW {
            return Err(SeqError::Overflow);
        }
        if base.domain() != Domain::Naturals {
            return Err(malformed(
                "dyadic_row",
                "base must be indexed by the naturals",
            ));
        }
        // base(2^row·(2j+1) − 1) is affine in j, so fold it into the index.
        let step = 1i64 << (row + 1);
        let offset = (1i64 << row) - 1;
        Ok(Sequence::reindex(base, Sequence::nat(step, offset)))
    }

    /// The zigzag bijection ℕ → ℤ: 0, −1, 1, −2, 2, …
    pub fn nat_to_int() -> Sequence {
        Sequence::Interleave {
            parts: vec![Sequence::nat(1, 0), Sequence::nat(-1, -1)],
        }
    }

    /// The zigzag bijection ℤ → ℕ: i ↦ 2i for i ≥ 0, −2i − 1 for i < 0.
    pub fn int_to_nat() -> Sequence {
        Sequence::Splice {
            left: Box::new(Sequence::nat(2, 1)),
            middle: Vec::new(),
            right: Box::new(Sequence::nat(2, 0)),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            Sequence::Affine { domain, .. } => (*domain).into(),
            Sequence::Finite { elements } => Domain::Finite(elements.len()),
            Sequence::Interleave { .. } | Sequence::DyadicRow { .. } => Domain::Naturals,
            Sequence::Splice { .. } => Domain::Integers,
            Sequence::Reindex { index, .. } => index.domain(),
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.domain().is_infinite()
    }

    /// Structural well-formedness of the whole tree.
    pub fn check(&self) -> Result<(), SeqError> {
        self.check_at("$")
    }

    fn check_at(&self, path: &str) -> Result<(), SeqError> {
        self.check_shallow(path)?;
        match self {
            Sequence::Affine { .. } | Sequence::Finite { .. } => Ok(()),
            Sequence::Interleave { parts } => {
                for (k, p) in parts.iter().enumerate() {
                    p.check_at(&format!("{path}.parts[{k}]"))?;
                }
                Ok(())
            }
            Sequence::Splice { left, right, .. } => {
                left.check_at(&format!("{path}.left"))?;
                right.check_at(&format!("{path}.right"))
            }
            Sequence::Reindex { base, index } => {
                base.check_at(&format!("{path}.base"))?;
                index.check_at(&format!("{path}.index"))
            }
            Sequence::DyadicRow { base, .. } => base.check_at(&format!("{path}.base")),
        }
    }

    fn check_shallow(&self, path: &str) -> Result<(), SeqError> {
        match self {
            Sequence::Affine { a, .. } => {
                if *a == 0 {
                    return Err(malformed(path, "affine coefficient a must be nonzero"));
                }
            }
            Sequence::Finite { elements } => ensure_distinct(path, elements)?,
            Sequence::Interleave { parts } => {
                if parts.is_empty() {
                    return Err(malformed(path, "interleave needs at least one part"));
                }
                if parts.iter().any(|p| p.domain() != Domain::Naturals) {
                    return Err(malformed(
                        path,
                        "interleave parts must be indexed by the naturals",
                    ));
                }
            }
            Sequence::Splice {
                left,
                middle,
                right,
            } => {
                if left.domain() != Domain::Naturals || right.domain() != Domain::Naturals {
                    return Err(malformed(
                        path,
                        "splice sides must be indexed by the naturals",
                    ));
                }
                ensure_distinct(path, middle)?;
            }
            Sequence::Reindex { base, index } => {
                if let Domain::Finite(_) = base.domain() {
                    if index.is_infinite() {
                        return Err(malformed(path, "infinite index into a finite base"));
                    }
                }
            }
            Sequence::DyadicRow { base, row } => {
                if *row > MAX_DYADIC_ROW {
                    return Err(malformed(
                        path,
                        format!("row {row} exceeds {MAX_DYADIC_ROW}"),
                    ));
                }
                if base.domain() != Domain::Naturals {
                    return Err(malformed(
                        path,
                        "dyadic_row base must be indexed by the naturals",
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, i: i64) -> Result<i64, SeqError> {
        self.eval_within(i, DEFAULT_MAGNITUDE_LIMIT)
    }

    /// Evaluates with an explicit magnitude limit on every intermediate value.
    pub fn eval_within(&self, i: i64, limit: i128) -> Result<i64, SeqError> {
        let v = self.ev(i as i128, limit.min(i64::MAX as i128))?;
        Ok(v as i64)
    }

    pub fn locate(&self, x: i64) -> Result<Option<i64>, SeqError> {
        self.locate_within(x, DEFAULT_MAGNITUDE_LIMIT)
    }

    pub fn locate_within(&self, x: i64, limit: i128) -> Result<Option<i64>, SeqError> {
        Ok(self
            .loc(x as i128, limit.min(i64::MAX as i128))?
            .map(|i| i as i64))
    }

    pub fn contains(&self, x: i64) -> Result<bool, SeqError> {
        Ok(self.locate(x)?.is_some())
    }

    pub(crate) fn ev(&self, i: i128, limit: i128) -> Result<i128, SeqError> {
        if !self.domain().contains(i) {
            return Err(SeqError::IndexOutOfDomain { index: i });
        }
        let v = match self {
            Sequence::Affine { a, b, .. } => *a as i128 * i + *b as i128,
            Sequence::Finite { elements } => elements[i as usize] as i128,
            Sequence::Interleave { parts } => {
                let m = parts.len() as i128;
                parts[(i % m) as usize].ev(i / m, limit)?
            }
            Sequence::Splice {
                left,
                middle,
                right,
            } => {
                let len = middle.len() as i128;
                if i < 0 {
                    left.ev(-i - 1, limit)?
                } else if i < len {
                    middle[i as usize] as i128
                } else {
                    right.ev(i - len, limit)?
                }
            }
            Sequence::Reindex { base, index } => base.ev(index.ev(i, limit)?, limit)?,
            Sequence::DyadicRow { base, row } => {
                let idx = (1i128 << row) * (2 * i + 1) - 1;
                if idx > limit {
                    return Err(SeqError::Overflow);
                }
                base.ev(idx, limit)?
            }
        };
        if v.abs() > limit {
            return Err(SeqError::Overflow);
        }
        Ok(v)
    }

    pub(crate) fn loc(&self, x: i128, limit: i128) -> Result<Option<i128>, SeqError> {
        let found = match self {
            Sequence::Affine { a, b, domain } => {
                let (a, b) = (*a as i128, *b as i128);
                let diff = x - b;
                if diff % a != 0 {
                    None
                } else {
                    Some(diff / a).filter(|&i| Domain::from(*domain).contains(i))
                }
            }
            Sequence::Finite { elements } => elements
                .iter()
                .position(|&e| e as i128 == x)
                .map(|p| p as i128),
            Sequence::Interleave { parts } => {
                let m = parts.len() as i128;
                let mut hit = None;
                for (r, p) in parts.iter().enumerate() {
                    if let Some(j) = p.loc(x, limit)? {
                        hit = Some(j * m + r as i128);
                        break;
                    }
                }
                hit
            }
            Sequence::Splice {
                left,
                middle,
                right,
            } => {
                if let Some(p) = middle.iter().position(|&e| e as i128 == x) {
                    Some(p as i128)
                } else if let Some(j) = left.loc(x, limit)? {
                    Some(-j - 1)
                } else {
                    right.loc(x, limit)?.map(|j| j + middle.len() as i128)
                }
            }
            Sequence::Reindex { base, index } => match base.loc(x, limit)? {
                Some(m) => index.loc(m, limit)?,
                None => None,
            },
            Sequence::DyadicRow { base, row } => match base.loc(x, limit)? {
                Some(m) => {
                    let q = m + 1;
                    if q > 0 && q.trailing_zeros() == *row {
                        Some(((q >> row) - 1) / 2)
                    } else {
                        None
                    }
                }
                None => None,
            },
        };
        if let Some(i) = found {
            if i.abs() > limit {
                return Err(SeqError::Overflow);
            }
        }
        Ok(found)
    }

    /// All values of a finite-domain sequence, in index order.
    pub fn materialize(&self) -> Result<Vec<i64>, SeqError> {
        match self.domain() {
            Domain::Finite(len) => (0..len as i64).map(|i| self.eval(i)).collect(),
            _ => Err(malformed("$", "cannot materialize an infinite sequence")),
        }
    }

    /// Injectivity is exact for these nodes; everything else is window-checked.
    pub fn injectivity_proved(&self) -> bool {
        match self {
            Sequence::Affine { .. } | Sequence::Finite { .. } => true,
            Sequence::DyadicRow { base, .. } => base.injectivity_proved(),
            _ => false,
        }
    }

    /// Domain indices with `|i| <= n_window`.
    pub fn window_indices(&self, n_window: u64) -> Vec<i64> {
        let n = n_window as i64;
        match self.domain() {
            Domain::Finite(len) => (0..(len as i64).min(n + 1)).collect(),
            Domain::Naturals => (0..=n).collect(),
            Domain::Integers => (-n..=n).collect(),
        }
    }

    /// Checks injectivity and the locate round-trip on the index window.
    pub fn validate(&self, n_window: u64) -> ValidationReport {
        let mut report = ValidationReport::new(n_window);
        if let Err(e) = self.check() {
            report.violate("structure", e.to_string(), None);
            return report;
        }
        let mut seen: HashMap<i64, i64> = HashMap::new();
        for i in self.window_indices(n_window) {
            let v = match self.eval(i) {
                Ok(v) => v,
                Err(e) => {
                    report.violate("eval", format!("index {i}: {e}"), Some(i));
                    continue;
                }
            };
            if let Some(prev) = seen.insert(v, i) {
                report.violate(
                    "injective",
                    format!("indices {prev} and {i} both map to {v}"),
                    Some(v),
                );
            }
            match self.locate(v) {
                Ok(Some(j)) if j == i => {}
                Ok(found) => report.violate(
                    "round_trip",
                    format!("locate({v}) = {found:?}, expected {i}"),
                    Some(v),
                ),
                Err(e) => report.violate("round_trip", format!("locate({v}): {e}"), Some(v)),
            }
        }
        let injective = if self.injectivity_proved() {
            Evidence::Proved
        } else {
            Evidence::WindowChecked { window: n_window }
        };
        report.record("injective", injective);
        report.record("round_trip", Evidence::WindowChecked { window: n_window });
        report
    }
}

fn ensure_distinct(path: &str, elements: &[i64]) -> Result<(), SeqError> {
    let mut seen = HashSet::with_capacity(elements.len());
    for &e in elements {
        if !seen.insert(e) {
            return Err(malformed(path, format!("duplicate element {e}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw_splice(left: Sequence, middle: Vec<i64>, right: Sequence) -> Sequence {
        Sequence::splice(left, middle, right).unwrap()
    }

    #[test]
    fn affine_eval_and_locate() {
        let s = Sequence::nat(2, 1);
        assert_eq!(s.eval(3), Ok(7));
        assert_eq!(s.locate(8), Ok(None));
        assert_eq!(s.locate(7), Ok(Some(3)));
        assert_eq!(s.locate(-1), Ok(None));
    }

    #[test]
    fn splice_reads_left_side_at_negative_indices() {
        let s = raw_splice(Sequence::nat(1, 10), vec![0], Sequence::nat(1, 20));
        assert_eq!(s.eval(-2), Ok(11));
        assert_eq!(s.eval(0), Ok(0));
        assert_eq!(s.eval(3), Ok(22));
        assert_eq!(s.locate(11), Ok(Some(-2)));
    }

    #[test]
    fn dyadic_row_values() {
        let row1 = Sequence::DyadicRow {
            base: Box::new(Sequence::nat(1, 0)),
            row: 1,
        };
        assert_eq!(row1.eval(0), Ok(1));
        let row0 = Sequence::DyadicRow {
            base: Box::new(Sequence::nat(1, 0)),
            row: 0,
        };
        assert_eq!(row0.locate(4), Ok(Some(2)));
        // linear scan cross-check
        let scan = (0..10).find(|&j| row0.eval(j) == Ok(4));
        assert_eq!(scan, Some(2));
    }

    #[test]
    fn dyadic_rows_of_identity_are_disjoint() {
        let rows: Vec<HashSet<i64>> = (0..3)
            .map(|row| {
                let s = Sequence::DyadicRow {
                    base: Box::new(Sequence::nat(1, 0)),
                    row,
                };
                (0..)
                    .map(|j| s.eval(j).unwrap())
                    .take_while(|&v| v <= 10_000)
                    .collect()
            })
            .collect();
        for a in 0..3 {
            for b in a + 1..3 {
                assert!(rows[a].is_disjoint(&rows[b]), "rows {a} and {b} overlap");
            }
        }
    }

    #[test]
    fn dyadic_row_constructor_folds_to_affine() {
        let folded = Sequence::dyadic_row(Sequence::nat(1, 0), 2).unwrap();
        let raw = Sequence::DyadicRow {
            base: Box::new(Sequence::nat(1, 0)),
            row: 2,
        };
        for j in 0..50 {
            assert_eq!(folded.eval(j), raw.eval(j));
        }
        assert!(matches!(folded, Sequence::Affine { .. }));
    }

    #[test]
    fn out_of_domain_indices_are_errors() {
        assert_eq!(
            Sequence::nat(1, 0).eval(-1),
            Err(SeqError::IndexOutOfDomain { index: -1 })
        );
        let f = Sequence::finite(vec![4, 5]).unwrap();
        assert_eq!(f.eval(2), Err(SeqError::IndexOutOfDomain { index: 2 }));
    }

    #[test]
    fn zero_coefficient_rejected() {
        assert!(Sequence::affine(0, 3, IndexDomain::Naturals).is_err());
        let parsed: Sequence =
            serde_json::from_str(r#"{"kind":"affine","a":0,"b":1,"domain":"nat"}"#).unwrap();
        assert!(parsed.check().is_err());
    }

    #[test]
    fn validate_examples() {
        assert!(Sequence::int(1, 0).validate(100).passed());
        let clash = Sequence::Interleave {
            parts: vec![Sequence::nat(2, 0), Sequence::nat(2, 0)],
        };
        let r = clash.validate(10);
        assert!(!r.passed());
        assert!(r
            .violations
            .iter()
            .any(|v| v.check == "injective" && v.at == Some(0)));
        let re = Sequence::Reindex {
            base: Box::new(Sequence::nat(3, 0)),
            index: Box::new(Sequence::nat(1, 0)),
        };
        assert!(re.validate(50).passed());
    }

    #[test]
    fn validate_distinguishes_evidence() {
        let r = Sequence::nat(3, 1).validate(20);
        assert_eq!(r.checks[0].evidence, Evidence::Proved);
        let r = Sequence::nat_to_int().validate(20);
        assert_eq!(r.checks[0].evidence, Evidence::WindowChecked { window: 20 });
    }

    #[test]
    fn zigzag_bijections_are_mutually_inverse() {
        let to_int = Sequence::nat_to_int();
        let to_nat = Sequence::int_to_nat();
        for i in -200..=200 {
            let n = to_nat.eval(i).unwrap();
            assert!(n >= 0);
            assert_eq!(to_int.eval(n), Ok(i));
        }
    }

    #[test]
    fn reindex_folding_preserves_values() {
        let a = Sequence::nat(3, 2);
        let idx = Sequence::nat(2, 1);
        let folded = Sequence::reindex(a.clone(), idx.clone());
        let raw = Sequence::Reindex {
            base: Box::new(a),
            index: Box::new(idx),
        };
        for j in 0..100 {
            assert_eq!(folded.eval(j), raw.eval(j));
        }
        let e = Sequence::nat_to_int();
        assert_eq!(Sequence::reindex(e.clone(), Sequence::nat(1, 0)), e);
    }

    #[test]
    fn overflow_is_reported() {
        let big = Sequence::nat(1 << 40, 0);
        let nested = Sequence::Reindex {
            base: Box::new(big.clone()),
            index: Box::new(big),
        };
        assert_eq!(nested.eval(1 << 10), Err(SeqError::Overflow));
        assert_eq!(
            Sequence::nat(1, 0).eval_within(100, 50),
            Err(SeqError::Overflow)
        );
    }

    #[test]
    fn json_kinds() {
        let s: Sequence = serde_json::from_str(
            r#"{"kind":"splice","left":{"kind":"affine","a":-1,"b":-1,"domain":"nat"},
                "middle":[0],"right":{"kind":"dyadic_row","row":1,
                "base":{"kind":"affine","a":1,"b":1,"domain":"nat"}}}"#,
        )
        .unwrap();
        assert!(s.check().is_ok());
        assert!(serde_json::from_str::<Sequence>(r#"{"kind":"mystery"}"#).is_err());
        let back: Sequence = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
    }
}
