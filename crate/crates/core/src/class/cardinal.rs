use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A cardinal in `{0, 1, 2, …, ℵ0}`.
///
/// The derived order is the cardinal order: `Fin(a) ≤ Fin(b)` iff `a ≤ b`,
/// and every finite cardinal is below `Aleph0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cardinal {
    Fin(u64),
    Aleph0,
}

impl Cardinal {
    pub const ZERO: Cardinal = Cardinal::Fin(0);
    pub const ONE: Cardinal = Cardinal::Fin(1);

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinal::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Cardinal::Fin(n) => Some(n),
            Cardinal::Aleph0 => None,
        }
    }
}

impl Add for Cardinal {
    type Output = Cardinal;

    fn add(self, other: Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Fin(a), Cardinal::Fin(b)) => {
                Cardinal::Fin(a.checked_add(b).expect("finite cardinal overflow"))
            }
            _ => Cardinal::Aleph0,
        }
    }
}

impl Mul for Cardinal {
    type Output = Cardinal;

    /// `0·ℵ0 = 0`.
    fn mul(self, other: Cardinal) -> Cardinal {
        match (self, other) {
            (Cardinal::Fin(0), _) | (_, Cardinal::Fin(0)) => Cardinal::ZERO,
            (Cardinal::Fin(a), Cardinal::Fin(b)) => {
                Cardinal::Fin(a.checked_mul(b).expect("finite cardinal overflow"))
            }
            _ => Cardinal::Aleph0,
        }
    }
}

pub fn card_mul(a: Cardinal, b: Cardinal) -> Cardinal {
    a * b
}

pub fn card_le(a: Cardinal, b: Cardinal) -> bool {
    a <= b
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Fin(n) => write!(f, "{n}"),
            Cardinal::Aleph0 => f.write_str("w"),
        }
    }
}

impl FromStr for Cardinal {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "w" {
            return Ok(Cardinal::Aleph0);
        }
        s.parse::<u64>()
            .map(Cardinal::Fin)
            .map_err(|_| format!("expected a natural number or \"w\", found {s:?}"))
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cardinal::Fin(n) => serializer.serialize_u64(*n),
            Cardinal::Aleph0 => serializer.serialize_str("w"),
        }
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CardinalVisitor;

        impl Visitor<'_> for CardinalVisitor {
            type Value = Cardinal;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a natural number or the string \"w\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Cardinal, E> {
                Ok(Cardinal::Fin(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Cardinal, E> {
                u64::try_from(v)
                    .map(Cardinal::Fin)
                    .map_err(|_| E::custom("cardinal must be nonnegative"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Cardinal, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(CardinalVisitor)
    }
}
