use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

/// A permutation tabulated on `[-N, N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowTable {
    pub n_window: u64,
    pub entries: BTreeMap<i64, i64>,
}

impl WindowTable {
    pub fn tabulate<E>(
        n_window: u64,
        mut f: impl FnMut(i64) -> Result<i64, E>,
    ) -> Result<WindowTable, E> {
        let n = n_window as i64;
        let mut entries = BTreeMap::new();
        for x in -n..=n {
            entries.insert(x, f(x)?);
        }
        Ok(WindowTable { n_window, entries })
    }

    pub fn get(&self, x: i64) -> Option<i64> {
        self.entries.get(&x).copied()
    }

    /// Whether no two window points share an image.
    pub fn is_injective(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.entries.len());
        self.entries.values().all(|&y| seen.insert(y))
    }

    pub fn fixed_points(&self) -> usize {
        self.entries.iter().filter(|(x, y)| x == y).count()
    }
}

/// Cycles of the table that close inside the window, minimum first.
/// Fixed points and orbits that leave the window are skipped.
pub fn window_orbits(t: &WindowTable) -> Vec<Vec<i64>> {
    let mut visited = HashSet::new();
    let mut cycles = Vec::new();
    for (&x, &y) in &t.entries {
        if x == y || visited.contains(&x) {
            continue;
        }
        let mut cycle = vec![x];
        let mut cur = y;
        let mut closed = false;
        while let Some(next) = t.get(cur) {
            if cur == x {
                closed = true;
                break;
            }
            if visited.contains(&cur) || cycle.len() > t.entries.len() {
                break;
            }
            cycle.push(cur);
            cur = next;
        }
        visited.extend(cycle.iter().copied());
        if closed {
            cycles.push(cycle);
        }
    }
    cycles
}
