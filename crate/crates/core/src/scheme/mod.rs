//! Permutations of the integers described by their orbit structure.
//!
//! A [`Scheme`] lists finitely many disjoint orbit families. A point is moved
//! exactly when some family locates it; its image is the next element of the
//! cycle that family assigns it to. Products of schemes are never normalized
//! and live only as [`Word`]s evaluated pointwise.

mod window;
mod word;

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use self::window::{window_orbits, WindowTable};
pub use self::word::{word_apply, Word};
use crate::class::{Cardinal, OrbitCensus, OrbitSize};
use crate::indexer::FamilyIndexer;
use crate::report::{Evidence, ValidationReport};
use crate::seq::{Domain, SeqError, Sequence};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("point {x} is claimed by families {first} and {second}")]
    AmbiguousCoverage { x: i64, first: usize, second: usize },
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error("{path}: {reason}")]
    Malformed { path: String, reason: String },
    #[error("invalid JSON: {0}")]
    Json(String),
}

fn malformed(path: &str, reason: impl Into<String>) -> SchemeError {
    SchemeError::Malformed {
        path: path.to_string(),
        reason: reason.into(),
    }
}

/// One disjoint block of cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitFamily {
    /// `elements[i] ↦ elements[(i+1) mod L]`, stored with its minimum first.
    FinCycle { elements: Vec<i64> },
    /// For every `k ∈ ℕ` the cycle `(I(k,0) … I(k,L−1))`.
    FinCycleFamily { length: u32, indexer: FamilyIndexer },
    /// `e(i) ↦ e(i+1)` over an integer-indexed enumeration.
    InfCycle { enumeration: Sequence },
    /// For every `k ∈ ℕ` the infinite cycle `I(k,i) ↦ I(k,i+1)`.
    InfCycleFamily { indexer: FamilyIndexer },
}

impl OrbitFamily {
    pub fn fin_cycle(elements: Vec<i64>) -> Result<OrbitFamily, SchemeError> {
        let f = OrbitFamily::FinCycle { elements };
        f.check("fin_cycle")?;
        Ok(f.normalized())
    }

    /// The cycle family `(base(Lk), …, base(Lk+L−1))`, `k ∈ ℕ`.
    pub fn rows(length: u32, base: Sequence) -> OrbitFamily {
        OrbitFamily::FinCycleFamily {
            length,
            indexer: FamilyIndexer::Rows {
                row_length: length,
                base,
            },
        }
    }

    pub fn inf_cycle(enumeration: Sequence) -> OrbitFamily {
        OrbitFamily::InfCycle { enumeration }
    }

    pub fn inf_family(indexer: FamilyIndexer) -> OrbitFamily {
        OrbitFamily::InfCycleFamily { indexer }
    }

    fn normalized(self) -> OrbitFamily {
        match self {
            OrbitFamily::FinCycle { mut elements } => {
                if let Some(pos) = elements
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &e)| e)
                    .map(|(p, _)| p)
                {
                    elements.rotate_left(pos);
                }
                OrbitFamily::FinCycle { elements }
            }
            other => other,
        }
    }

    fn check(&self, path: &str) -> Result<(), SchemeError> {
        match self {
            OrbitFamily::FinCycle { elements } => {
                if elements.len() < 2 {
                    return Err(malformed(path, "a cycle needs at least 2 elements"));
                }
                let mut seen = HashSet::new();
                for &e in elements {
                    if !seen.insert(e) {
                        return Err(malformed(path, format!("duplicate element {e}")));
                    }
                }
            }
            OrbitFamily::FinCycleFamily { length, indexer } => {
                match indexer {
                    FamilyIndexer::Rows { row_length, .. } if row_length == length => {}
                    FamilyIndexer::Rows { .. } => {
                        return Err(malformed(path, "row_length must equal the cycle length"))
                    }
                    _ => return Err(malformed(path, "finite cycle families use a rows indexer")),
                }
                indexer.check().map_err(|e| prefix(path, e))?;
            }
            OrbitFamily::InfCycle { enumeration } => {
                if enumeration.domain() != Domain::Integers {
                    return Err(malformed(
                        path,
                        "an infinite cycle is indexed by the integers",
                    ));
                }
                enumeration.check().map_err(|e| prefix(path, e))?;
            }
            OrbitFamily::InfCycleFamily { indexer } => {
                if indexer.row_length().is_some() {
                    return Err(malformed(path, "infinite cycle families cannot use rows"));
                }
                indexer.check().map_err(|e| prefix(path, e))?;
            }
        }
        Ok(())
    }

    /// Image of `x` if `x` lies in this family's support.
    pub fn image(&self, x: i64) -> Result<Option<i64>, SeqError> {
        Ok(match self {
            OrbitFamily::FinCycle { elements } => elements
                .iter()
                .position(|&e| e == x)
                .map(|p| elements[(p + 1) % elements.len()]),
            OrbitFamily::FinCycleFamily { length, indexer } => match indexer.locate(x)? {
                Some((k, j)) => Some(indexer.eval(k, (j + 1) % *length as i64)?),
                None => None,
            },
            OrbitFamily::InfCycle { enumeration } => match enumeration.locate(x)? {
                Some(i) => Some(enumeration.eval(i + 1)?),
                None => None,
            },
            OrbitFamily::InfCycleFamily { indexer } => match indexer.locate(x)? {
                Some((k, i)) => Some(indexer.eval(k, i + 1)?),
                None => None,
            },
        })
    }

    /// The family acting by the inverse permutation on the same support.
    pub fn inverse(&self) -> OrbitFamily {
        match self {
            OrbitFamily::FinCycle { elements } => {
                let mut rev = elements.clone();
                rev.reverse();
                OrbitFamily::FinCycle { elements: rev }.normalized()
            }
            OrbitFamily::FinCycleFamily { length, indexer } => {
                let FamilyIndexer::Rows { base, .. } = indexer else {
                    unreachable!("checked: finite families use rows")
                };
                OrbitFamily::rows(*length, reverse_rows(base, *length))
            }
            OrbitFamily::InfCycle { enumeration } => OrbitFamily::InfCycle {
                enumeration: Sequence::reindex(enumeration.clone(), Sequence::int(-1, 0)),
            },
            OrbitFamily::InfCycleFamily { indexer } => OrbitFamily::InfCycleFamily {
                indexer: match indexer {
                    FamilyIndexer::Reverse { inner } => (**inner).clone(),
                    other => FamilyIndexer::Reverse {
                        inner: Box::new(other.clone()),
                    },
                },
            },
        }
    }

    /// The census contribution of this family.
    pub fn census(&self) -> (OrbitSize, Cardinal) {
        match self {
            OrbitFamily::FinCycle { elements } => {
                (OrbitSize::Finite(elements.len() as u64), Cardinal::ONE)
            }
            OrbitFamily::FinCycleFamily { length, .. } => {
                (OrbitSize::Finite(*length as u64), Cardinal::Aleph0)
            }
            OrbitFamily::InfCycle { .. } => (OrbitSize::Infinite, Cardinal::ONE),
            OrbitFamily::InfCycleFamily { .. } => (OrbitSize::Infinite, Cardinal::Aleph0),
        }
    }

    /// Sequences whose ranges together are exactly this family's support.
    pub fn support(&self) -> Vec<Sequence> {
        match self {
            OrbitFamily::FinCycle { elements } => vec![Sequence::Finite {
                elements: elements.clone(),
            }],
            OrbitFamily::InfCycle { enumeration } => vec![enumeration.clone()],
            OrbitFamily::FinCycleFamily { indexer, .. }
            | OrbitFamily::InfCycleFamily { indexer } => indexer_support(indexer),
        }
    }

    pub fn validate(&self, n_window: u64) -> ValidationReport {
        match self {
            OrbitFamily::FinCycle { .. } => {
                let mut r = ValidationReport::new(n_window);
                r.record("elements_distinct", Evidence::Proved);
                r
            }
            OrbitFamily::FinCycleFamily { indexer, .. }
            | OrbitFamily::InfCycleFamily { indexer } => indexer.validate(n_window),
            OrbitFamily::InfCycle { enumeration } => enumeration.validate(n_window),
        }
    }
}

fn indexer_support(indexer: &FamilyIndexer) -> Vec<Sequence> {
    match indexer {
        FamilyIndexer::Rows { base, .. } | FamilyIndexer::Grid { base } => vec![base.clone()],
        FamilyIndexer::Spliced {
            left,
            middle,
            right,
            ..
        } => vec![left.clone(), middle.clone(), right.clone()],
        FamilyIndexer::Reverse { inner } => indexer_support(inner),
    }
}

/// Index map `Lk + j ↦ Lk + (L − j) mod L`, which reverses every row.
fn row_reversal(length: u32) -> Sequence {
    let l = length as i64;
    Sequence::Interleave {
        parts: (0..l).map(|j| Sequence::nat(l, (l - j) % l)).collect(),
    }
}

fn reverse_rows(base: &Sequence, length: u32) -> Sequence {
    if length == 2 {
        return base.clone();
    }
    let rev = row_reversal(length);
    if let Sequence::Reindex { base: inner, index } = base {
        if **index == rev {
            return (**inner).clone();
        }
    }
    Sequence::Reindex {
        base: Box::new(base.clone()),
        index: Box::new(rev),
    }
}

fn prefix(path: &str, e: SeqError) -> SchemeError {
    match e {
        SeqError::Malformed { path: p, reason } => SchemeError::Malformed {
            path: format!(
                "{path}.{}",
                p.trim_start_matches("$.").trim_start_matches('$')
            ),
            reason,
        },
        other => SchemeError::Seq(other),
    }
}

/// A permutation of ℤ as disjoint orbit families plus an optional
/// enumeration of its fixed points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scheme {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub families: Vec<OrbitFamily>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_set: Option<Sequence>,
}

impl Scheme {
    pub fn new(families: Vec<OrbitFamily>, fixed_set: Option<Sequence>) -> Scheme {
        Scheme {
            name: None,
            families: families.into_iter().map(OrbitFamily::normalized).collect(),
            fixed_set,
        }
    }

    pub fn identity() -> Scheme {
        Scheme::new(Vec::new(), Some(Sequence::int(1, 0)))
    }

    pub fn named(mut self, name: impl Into<String>) -> Scheme {
        self.name = Some(name.into());
        self
    }

    /// Parses the JSON form and checks its structure.
    pub fn from_json(text: &str) -> Result<Scheme, SchemeError> {
        let raw: Scheme =
            serde_json::from_str(text).map_err(|e| SchemeError::Json(e.to_string()))?;
        raw.check()?;
        Ok(Scheme {
            families: raw
                .families
                .into_iter()
                .map(OrbitFamily::normalized)
                .collect(),
            ..raw
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("schemes serialize")
    }

    pub fn check(&self) -> Result<(), SchemeError> {
        for (k, f) in self.families.iter().enumerate() {
            f.check(&format!("families[{k}]"))?;
        }
        if let Some(fx) = &self.fixed_set {
            fx.check().map_err(|e| prefix("fixed_set", e))?;
        }
        Ok(())
    }

    /// Image of `x`; points outside every family are fixed.
    pub fn apply(&self, x: i64) -> Result<i64, SchemeError> {
        let mut hit: Option<(usize, i64)> = None;
        for (k, f) in self.families.iter().enumerate() {
            if let Some(y) = f.image(x)? {
                if let Some((first, _)) = hit {
                    return Err(SchemeError::AmbiguousCoverage {
                        x,
                        first,
                        second: k,
                    });
                }
                hit = Some((k, y));
            }
        }
        Ok(hit.map_or(x, |(_, y)| y))
    }

    pub fn inverse(&self) -> Scheme {
        Scheme {
            name: self.name.as_ref().map(|n| format!("{n}^-1")),
            families: self.families.iter().map(OrbitFamily::inverse).collect(),
            fixed_set: self.fixed_set.clone(),
        }
    }

    pub fn census(&self) -> OrbitCensus {
        let mut c = OrbitCensus::new();
        for f in &self.families {
            let (size, count) = f.census();
            c.add(size, count).expect("family sizes are at least 2");
        }
        c
    }

    pub fn is_identity(&self) -> bool {
        self.families.is_empty()
    }

    /// Whether the fixed set is known to be finite (`Some(true)`), known to
    /// be infinite (`Some(false)`), or not enumerated.
    pub fn fixed_set_finite(&self) -> Option<bool> {
        self.fixed_set.as_ref().map(|f| !f.is_infinite())
    }

    pub fn window(&self, n_window: u64) -> Result<WindowTable, SchemeError> {
        WindowTable::tabulate(n_window, |x| self.apply(x))
    }

    /// Checks disjointness, fixed-set partition and bijectivity on `[-N, N]`.
    pub fn validate(&self, n_window: u64) -> ValidationReport {
        let mut report = ValidationReport::new(n_window);
        if let Err(e) = self.check() {
            report.violate("structure", e.to_string(), None);
            return report;
        }
        for (k, f) in self.families.iter().enumerate() {
            report.absorb(&format!("families[{k}]"), f.validate(n_window));
        }
        if let Some(fx) = &self.fixed_set {
            report.absorb("fixed_set", fx.validate(n_window));
        } else {
            report.complement_opaque = true;
        }
        let inverse = self.inverse();
        let n = n_window as i64;
        let mut images: HashMap<i64, i64> = HashMap::new();
        for x in -n..=n {
            let mut owners = Vec::new();
            let mut image = x;
            for (k, f) in self.families.iter().enumerate() {
                match f.image(x) {
                    Ok(Some(y)) => {
                        owners.push(k);
                        image = y;
                    }
                    Ok(None) => {}
                    Err(e) => report.violate("eval", format!("families[{k}] at {x}: {e}"), Some(x)),
                }
            }
            if owners.len() > 1 {
                report.violate(
                    "disjoint",
                    format!("{x} lies in families {owners:?}"),
                    Some(x),
                );
            }
            if let Some(fx) = &self.fixed_set {
                match fx.contains(x) {
                    Ok(true) if !owners.is_empty() => report.violate(
                        "fixed_disjoint",
                        format!("{x} is both fixed and in families {owners:?}"),
                        Some(x),
                    ),
                    Ok(false) if owners.is_empty() => report.violate(
                        "coverage",
                        format!("{x} is in no family and not in the fixed set"),
                        Some(x),
                    ),
                    Ok(_) => {}
                    Err(e) => report.violate("eval", format!("fixed_set at {x}: {e}"), Some(x)),
                }
            }
            if owners.len() == 1 {
                if image == x {
                    report.violate("support", format!("{x} is located but not moved"), Some(x));
                }
                if let Some(prev) = images.insert(image, x) {
                    report.violate(
                        "injective",
                        format!("{prev} and {x} both map to {image}"),
                        Some(x),
                    );
                }
                match inverse.apply(image) {
                    Ok(back) if back == x => {}
                    Ok(back) => report.violate(
                        "bijective",
                        format!("inverse sends {image} to {back}, expected {x}"),
                        Some(x),
                    ),
                    Err(e) => report.violate("bijective", e.to_string(), Some(x)),
                }
            }
        }
        let checked = Evidence::WindowChecked { window: n_window };
        report.record("disjoint", checked);
        if self.fixed_set.is_some() {
            report.record("coverage", checked);
        }
        report.record("injective", checked);
        report.record("bijective", checked);
        report
    }
}

/// Image of `x` under `s`.
pub fn scheme_apply(s: &Scheme, x: i64) -> Result<i64, SchemeError> {
    s.apply(x)
}

pub fn scheme_inverse(s: &Scheme) -> Scheme {
    s.inverse()
}

pub fn orbit_census(s: &Scheme) -> OrbitCensus {
    s.census()
}
