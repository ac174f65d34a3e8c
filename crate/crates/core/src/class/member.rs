//! Class membership decided from an orbit census.
//!
//! A permutation belongs to a class `(α, β)` when its support can be split
//! into invariant parts (each a nonempty union of whole orbits) whose number
//! is at most / exactly `α` and whose cardinalities are each at most /
//! exactly `β`. Only the census matters, so everything here works on
//! [`OrbitCensus`] values.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::cardinal::Cardinal;
use super::census::{OrbitCensus, OrbitSize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    AtMost,
    Exactly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassSpec {
    pub parts: Cardinal,
    pub parts_mode: Mode,
    pub size: Cardinal,
    pub size_mode: Mode,
}

impl ClassSpec {
    pub fn new(parts: Cardinal, parts_mode: Mode, size: Cardinal, size_mode: Mode) -> Self {
        ClassSpec {
            parts,
            parts_mode,
            size,
            size_mode,
        }
    }

    /// At most `parts` parts, each of size at most `size`.
    pub fn w(parts: Cardinal, size: Cardinal) -> Self {
        Self::new(parts, Mode::AtMost, size, Mode::AtMost)
    }

    /// Exactly `parts` parts, each of size at most `size`.
    pub fn k(parts: Cardinal, size: Cardinal) -> Self {
        Self::new(parts, Mode::Exactly, size, Mode::AtMost)
    }

    /// At most `parts` parts, each of size exactly `size`.
    pub fn r(parts: Cardinal, size: Cardinal) -> Self {
        Self::new(parts, Mode::AtMost, size, Mode::Exactly)
    }

    /// Exactly `parts` parts, each of size exactly `size`.
    pub fn s(parts: Cardinal, size: Cardinal) -> Self {
        Self::new(parts, Mode::Exactly, size, Mode::Exactly)
    }

    pub fn letter(&self) -> char {
        match (self.parts_mode, self.size_mode) {
            (Mode::AtMost, Mode::AtMost) => 'W',
            (Mode::Exactly, Mode::AtMost) => 'K',
            (Mode::AtMost, Mode::Exactly) => 'R',
            (Mode::Exactly, Mode::Exactly) => 'S',
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.letter(), self.parts, self.size)
    }
}

impl FromStr for ClassSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || format!("expected W(a,b), K(a,b), R(a,b) or S(a,b), found {s:?}");
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(err)?;
        let rest = chars.as_str().trim();
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(err)?;
        let (a, b) = inner.split_once(',').ok_or_else(err)?;
        let (a, b): (Cardinal, Cardinal) = (a.parse()?, b.parse()?);
        match letter.to_ascii_uppercase() {
            'W' => Ok(ClassSpec::w(a, b)),
            'K' => Ok(ClassSpec::k(a, b)),
            'R' => Ok(ClassSpec::r(a, b)),
            'S' => Ok(ClassSpec::s(a, b)),
            _ => Err(err()),
        }
    }
}

/// Part counts a census can be split into under a given size constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
enum PartCounts {
    /// Every count from `lo` to `hi`, inclusive.
    Interval { lo: u64, hi: Cardinal },
    /// Exactly these finite counts.
    Finite(BTreeSet<u64>),
    /// Only infinitely many parts work.
    Aleph0Only,
}

impl PartCounts {
    fn none() -> Self {
        PartCounts::Finite(BTreeSet::new())
    }

    fn admits_exactly(&self, alpha: Cardinal) -> bool {
        match self {
            PartCounts::Interval { lo, hi } => Cardinal::Fin(*lo) <= alpha && alpha <= *hi,
            PartCounts::Finite(set) => alpha.finite().is_some_and(|a| set.contains(&a)),
            PartCounts::Aleph0Only => alpha == Cardinal::Aleph0,
        }
    }

    fn admits_at_most(&self, alpha: Cardinal) -> bool {
        match self {
            PartCounts::Interval { lo, hi } => {
                Cardinal::Fin(*lo) <= *hi && Cardinal::Fin(*lo) <= alpha
            }
            PartCounts::Finite(set) => set.first().is_some_and(|&m| Cardinal::Fin(m) <= alpha),
            PartCounts::Aleph0Only => alpha == Cardinal::Aleph0,
        }
    }
}

/// Decides whether a permutation with census `c` lies in the class `spec`.
pub fn class_member(c: &OrbitCensus, spec: &ClassSpec) -> bool {
    if c.is_empty() {
        // The empty union is the only decomposition of an empty support.
        return match spec.parts_mode {
            Mode::AtMost => true,
            Mode::Exactly => spec.parts == Cardinal::ZERO,
        };
    }
    let counts = match spec.size {
        Cardinal::Aleph0 => unbounded_part_counts(c, spec.size_mode),
        Cardinal::Fin(b) => bounded_part_counts(c, b, spec.size_mode),
    };
    match spec.parts_mode {
        Mode::Exactly => counts.admits_exactly(spec.parts),
        Mode::AtMost => counts.admits_at_most(spec.parts),
    }
}

fn unbounded_part_counts(c: &OrbitCensus, size_mode: Mode) -> PartCounts {
    let total = c.total_orbits();
    match size_mode {
        Mode::AtMost => PartCounts::Interval { lo: 1, hi: total },
        Mode::Exactly => {
            if total == Cardinal::Aleph0 {
                return PartCounts::Interval {
                    lo: 1,
                    hi: Cardinal::Aleph0,
                };
            }
            // Finitely many orbits: a part is infinite only if it holds an
            // infinite orbit.
            match c.count(OrbitSize::Infinite) {
                Cardinal::Fin(0) => PartCounts::none(),
                hi => PartCounts::Interval { lo: 1, hi },
            }
        }
    }
}

fn bounded_part_counts(c: &OrbitCensus, b: u64, size_mode: Mode) -> PartCounts {
    let mut repeatable = Vec::new();
    let mut limited = Vec::new();
    for (size, count) in c.iter() {
        let d = match size {
            OrbitSize::Infinite => return PartCounts::none(),
            OrbitSize::Finite(d) => d,
        };
        if d > b {
            return PartCounts::none();
        }
        match count {
            Cardinal::Aleph0 => repeatable.push(d),
            Cardinal::Fin(n) => limited.push((d, n)),
        }
    }
    let exact = size_mode == Mode::Exactly;
    // fill[g]: a gap of g can be closed exactly by sizes of infinite count
    let mut fill = vec![false; b as usize + 1];
    fill[0] = true;
    for g in 1..=b as usize {
        fill[g] = repeatable
            .iter()
            .any(|&d| d as usize <= g && fill[g - d as usize]);
    }
    if exact && repeatable.iter().any(|&d| !fill[(b - d) as usize]) {
        return PartCounts::none();
    }
    limited.sort_by_key(|&(d, _)| std::cmp::Reverse(d));
    let sizes: Vec<u64> = limited.iter().map(|&(d, _)| d).collect();
    let start: Vec<u64> = limited.iter().map(|&(_, n)| n).collect();
    let mut packer = Packer {
        sizes: &sizes,
        b,
        exact,
        fill: &fill,
        memo: HashMap::new(),
    };
    let finite_blocks = packer.solve(&start);
    if repeatable.is_empty() {
        PartCounts::Finite(finite_blocks)
    } else if finite_blocks.is_empty() {
        PartCounts::none()
    } else {
        PartCounts::Aleph0Only
    }
}

/// Exhaustive search over blocks that cover the finitely counted orbits.
struct Packer<'a> {
    /// Finitely counted sizes, largest first.
    sizes: &'a [u64],
    b: u64,
    exact: bool,
    fill: &'a [bool],
    memo: HashMap<Vec<u64>, BTreeSet<u64>>,
}

impl Packer<'_> {
    /// Block counts achievable for the remaining orbit counts `state`.
    fn solve(&mut self, state: &[u64]) -> BTreeSet<u64> {
        let Some(first) = state.iter().position(|&n| n > 0) else {
            return BTreeSet::from([0]);
        };
        if let Some(hit) = self.memo.get(state) {
            return hit.clone();
        }
        // Every block is anchored at one orbit of the largest remaining size,
        // so each partition is counted with a canonical first block.
        let mut rest = state.to_vec();
        rest[first] -= 1;
        let room = self.b - self.sizes[first];
        let mut next_states = Vec::new();
        self.extend_block(first, &mut rest, room, &mut next_states);
        let mut out = BTreeSet::new();
        for next in next_states {
            for k in self.solve(&next) {
                out.insert(k + 1);
            }
        }
        self.memo.insert(state.to_vec(), out.clone());
        out
    }

    fn extend_block(&self, idx: usize, rest: &mut Vec<u64>, room: u64, out: &mut Vec<Vec<u64>>) {
        if idx == self.sizes.len() {
            if !self.exact || self.fill[room as usize] {
                out.push(rest.clone());
            }
            return;
        }
        let d = self.sizes[idx];
        let most = rest[idx].min(room / d);
        for take in 0..=most {
            rest[idx] -= take;
            self.extend_block(idx + 1, rest, room - take * d, out);
            rest[idx] += take;
        }
    }
}
