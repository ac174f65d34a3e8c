//! Constructive factorizations into structured factors.
//!
//! Every construction returns a [`Word`] together with a per-factor class
//! certificate and a pointwise comparison against the input on windows.

mod build;
mod chain;
mod involution;
mod order;
mod ringed;
mod wild;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use self::chain::{chain_factor, chain_factor_through_ringed};
pub use self::involution::factor_involution_to_ringed;
pub use self::order::factor_order_n;
pub use self::ringed::factor_ringed_to_lf;
pub use self::wild::factor_lf_to_wild;
use crate::class::{
    class_member, classify_structural, Cardinal, ClassSpec, OrbitCensus, StructuralReport,
};
use crate::scheme::{Scheme, SchemeError, Word};
use crate::seq::SeqError;

/// Windows used when no other is configured.
pub const DEFAULT_WINDOWS: [u64; 3] = [64, 256, 1024];

/// At most this many offending points are listed in a verification.
pub const MAX_REPORTED_MISMATCHES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    LocalFinite,
    Ringed,
    Wild,
    /// `S(ℵ0, n)`: infinitely many invariant parts of exactly `n` points.
    SOmega(u64),
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::LocalFinite => f.write_str("lf"),
            Target::Ringed => f.write_str("ringed"),
            Target::Wild => f.write_str("wild"),
            Target::SOmega(n) => write!(f, "s-omega-{n}"),
        }
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "lf" => Ok(Target::LocalFinite),
            "ringed" => Ok(Target::Ringed),
            "wild" => Ok(Target::Wild),
            other => match other.strip_prefix("s-omega-").map(str::parse::<u64>) {
                Some(Ok(n)) if n >= 2 => Ok(Target::SOmega(n)),
                _ => Err(format!(
                    "unknown target {s:?}; expected lf, ringed, wild or s-omega-N with N >= 2"
                )),
            },
        }
    }
}

impl Serialize for Target {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("input is not ringed")]
    NotRinged,
    #[error("input is not an involution")]
    NotInvolution,
    #[error("input is not local-finite")]
    NotLocalFinite,
    #[error("input has order {found}, expected {expected}")]
    WrongOrder { expected: u64, found: Cardinal },
    #[error("input has no fixed-set enumerator, so its fixed points cannot be used")]
    ComplementOpaque,
    #[error("insufficient reservoir: {0}")]
    InsufficientReservoir(String),
    #[error("no factorization chain leads from this input to {0}")]
    NoChain(Target),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// Class verdict for one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub factor: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structural: Option<StructuralReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<OrbitCensus>,
}

/// Whether `s` lies in `target`.
pub fn certify(
    target: Target,
    s: &Scheme,
    n_window: u64,
) -> (bool, Option<StructuralReport>, Option<OrbitCensus>) {
    match target {
        Target::SOmega(n) => {
            let census = s.census();
            let ok = class_member(&census, &ClassSpec::s(Cardinal::Aleph0, Cardinal::Fin(n)));
            (ok, None, Some(census))
        }
        _ => {
            let r = classify_structural(s, n_window);
            let ok = match target {
                Target::LocalFinite => r.is_local_finite,
                Target::Ringed => r.is_ringed,
                Target::Wild => r.is_wild,
                Target::SOmega(_) => unreachable!(),
            };
            (ok, Some(r), None)
        }
    }
}

pub fn in_target(target: Target, s: &Scheme, n_window: u64) -> bool {
    certify(target, s, n_window).0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowMismatches {
    pub window: u64,
    pub mismatches: u64,
}

/// Pointwise comparison of a word against a scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub windows: Vec<u64>,
    /// Mismatches on the largest window.
    pub mismatches: u64,
    pub per_window: Vec<WindowMismatches>,
    /// The first offending points by absolute value.
    pub offending: Vec<i64>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }
}

/// Compares `word` with `f` at every `|x| <= max(windows)`. Evaluation
/// errors on either side count as mismatches.
pub fn verify(f: &Scheme, word: &Word, windows: &[u64]) -> Verification {
    let mut windows = windows.to_vec();
    windows.sort_unstable();
    windows.dedup();
    let n = windows.last().copied().unwrap_or(0) as i64;
    let mut bad: Vec<i64> = Vec::new();
    for x in -n..=n {
        let ok = matches!((f.apply(x), word.apply(x)), (Ok(a), Ok(b)) if a == b);
        if !ok {
            bad.push(x);
        }
    }
    bad.sort_by_key(|x| (x.unsigned_abs(), *x));
    let per_window = windows
        .iter()
        .map(|&w| WindowMismatches {
            window: w,
            mismatches: bad.iter().filter(|x| x.unsigned_abs() <= w).count() as u64,
        })
        .collect();
    Verification {
        mismatches: bad.len() as u64,
        windows,
        per_window,
        offending: bad.into_iter().take(MAX_REPORTED_MISMATCHES).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationResult {
    pub input: Scheme,
    pub word: Word,
    pub target: Target,
    pub certificates: Vec<Certificate>,
    pub verification: Verification,
}

impl FactorizationResult {
    /// Certifies every factor against `target` and verifies on `windows`.
    pub fn assemble(input: &Scheme, word: Word, target: Target, windows: &[u64]) -> Self {
        let cert_window = windows.iter().copied().max().unwrap_or(256);
        let certificates = word
            .factors
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let (passed, structural, census) = certify(target, g, cert_window);
                Certificate {
                    factor: k,
                    passed,
                    structural,
                    census,
                }
            })
            .collect();
        let verification = verify(input, &word, windows);
        FactorizationResult {
            input: input.clone(),
            word,
            target,
            certificates,
            verification,
        }
    }

    pub fn certified(&self) -> bool {
        self.certificates.iter().all(|c| c.passed)
    }

    pub fn passed(&self) -> bool {
        self.certified() && self.verification.passed()
    }
}

fn require_fixed_set(f: &Scheme) -> Result<&crate::seq::Sequence, FactorError> {
    f.fixed_set.as_ref().ok_or(FactorError::ComplementOpaque)
}
