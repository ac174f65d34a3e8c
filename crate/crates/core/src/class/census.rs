use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use super::cardinal::Cardinal;

/// Size of one orbit of a moved point: finite (at least 2) or infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrbitSize {
    Finite(u64),
    Infinite,
}

impl OrbitSize {
    pub fn cardinal(self) -> Cardinal {
        match self {
            OrbitSize::Finite(n) => Cardinal::Fin(n),
            OrbitSize::Infinite => Cardinal::Aleph0,
        }
    }
}

impl fmt::Display for OrbitSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitSize::Finite(n) => write!(f, "{n}"),
            OrbitSize::Infinite => f.write_str("w"),
        }
    }
}

impl FromStr for OrbitSize {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<Cardinal>() {
            Ok(Cardinal::Aleph0) => Ok(OrbitSize::Infinite),
            Ok(Cardinal::Fin(n)) if n >= 2 => Ok(OrbitSize::Finite(n)),
            Ok(Cardinal::Fin(n)) => Err(CensusError::SizeTooSmall(n)),
            Err(e) => Err(CensusError::Syntax(e)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("orbit size {0} is not an orbit of moved points (sizes start at 2)")]
    SizeTooSmall(u64),
    #[error("invalid census entry: {0}")]
    Syntax(String),
}

/// Multiset of orbit sizes of a permutation restricted to its support.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct OrbitCensus {
    counts: BTreeMap<OrbitSize, Cardinal>,
}

impl OrbitCensus {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (OrbitSize, Cardinal)>,
    ) -> Result<Self, CensusError> {
        let mut c = OrbitCensus::new();
        for (size, count) in pairs {
            c.add(size, count)?;
        }
        Ok(c)
    }

    /// Adds `count` orbits of the given size. Zero counts are dropped.
    pub fn add(&mut self, size: OrbitSize, count: Cardinal) -> Result<(), CensusError> {
        if let OrbitSize::Finite(n) = size {
            if n < 2 {
                return Err(CensusError::SizeTooSmall(n));
            }
        }
        if count == Cardinal::ZERO {
            return Ok(());
        }
        let slot = self.counts.entry(size).or_insert(Cardinal::ZERO);
        *slot = *slot + count;
        Ok(())
    }

    pub fn merge(&mut self, other: &OrbitCensus) {
        for (&size, &count) in &other.counts {
            self.add(size, count).expect("sizes already validated");
        }
    }

    pub fn count(&self, size: OrbitSize) -> Cardinal {
        self.counts.get(&size).copied().unwrap_or(Cardinal::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (OrbitSize, Cardinal)> + '_ {
        self.counts.iter().map(|(&s, &c)| (s, c))
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total_orbits(&self) -> Cardinal {
        self.counts.values().fold(Cardinal::ZERO, |acc, &c| acc + c)
    }

    /// `|M_f|`: the cardinal sum of size·count.
    pub fn support_cardinality(&self) -> Cardinal {
        self.iter()
            .fold(Cardinal::ZERO, |acc, (s, c)| acc + s.cardinal() * c)
    }
}

pub fn support_cardinality(c: &OrbitCensus) -> Cardinal {
    c.support_cardinality()
}

impl fmt::Display for OrbitCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (size, count)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{size}: {count}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
struct CensusJson {
    counts: BTreeMap<String, Cardinal>,
}

impl Serialize for OrbitCensus {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CensusJson {
            counts: self.iter().map(|(s, c)| (s.to_string(), c)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrbitCensus {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = CensusJson::deserialize(deserializer)?;
        let mut c = OrbitCensus::new();
        for (k, v) in raw.counts {
            let size: OrbitSize = k.parse().map_err(serde::de::Error::custom)?;
            c.add(size, v).map_err(serde::de::Error::custom)?;
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::Cardinal::{Aleph0, Fin};
    use super::OrbitSize::{Finite, Infinite};
    use super::*;

    #[test]
    fn support_sums() {
        let c = OrbitCensus::from_pairs([(Finite(2), Aleph0)]).unwrap();
        assert_eq!(c.support_cardinality(), Aleph0);
        let c = OrbitCensus::from_pairs([(Finite(2), Fin(3)), (Finite(5), Fin(1))]).unwrap();
        assert_eq!(c.support_cardinality(), Fin(11));
        assert_eq!(OrbitCensus::new().support_cardinality(), Fin(0));
        let c = OrbitCensus::from_pairs([(Infinite, Fin(1))]).unwrap();
        assert_eq!(c.support_cardinality(), Aleph0);
    }

    #[test]
    fn rejects_fixed_point_sizes_and_drops_zero_counts() {
        assert!(OrbitCensus::from_pairs([(Finite(1), Fin(1))]).is_err());
        let c = OrbitCensus::from_pairs([(Finite(3), Fin(0))]).unwrap();
        assert!(c.is_empty());
    }

    #[test]
    fn json_round_trip() {
        let c = OrbitCensus::from_pairs([(Finite(2), Aleph0), (Infinite, Fin(1))]).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(text, r#"{"counts":{"2":"w","w":1}}"#);
        assert_eq!(serde_json::from_str::<OrbitCensus>(&text).unwrap(), c);
    }
}
