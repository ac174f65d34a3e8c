use serde::Serialize;

use super::cardinal::Cardinal;
use crate::report::Evidence;
use crate::scheme::{OrbitFamily, Scheme};

/// Structural predicates of a scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    /// Least common multiple of the cycle lengths, `w` if a cycle is infinite.
    pub order: Cardinal,
    pub is_local_finite: bool,
    pub is_ringed: bool,
    pub ringed_evidence: Evidence,
    pub is_wild: bool,
    /// `Some(n)` when the scheme has finite order `n ≥ 2`.
    pub in_i_n: Option<u64>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn order(s: &Scheme) -> Cardinal {
    let mut acc: u64 = 1;
    for f in &s.families {
        let len = match f {
            OrbitFamily::FinCycle { elements } => elements.len() as u64,
            OrbitFamily::FinCycleFamily { length, .. } => *length as u64,
            _ => return Cardinal::Aleph0,
        };
        acc = acc / gcd(acc, len) * len;
    }
    Cardinal::Fin(acc)
}

/// Ringed needs finitely many orbits: no cycle families and a finite fixed
/// set. Without a fixed-set enumerator finiteness is judged by comparing the
/// fixed points in `[-N, N]` with those in `[-N/2, N/2]`.
fn ringed(s: &Scheme, n_window: u64) -> (bool, Evidence) {
    let no_families = s.families.iter().all(|f| {
        matches!(
            f,
            OrbitFamily::FinCycle { .. } | OrbitFamily::InfCycle { .. }
        )
    });
    if !no_families {
        return (false, Evidence::Proved);
    }
    match s.fixed_set_finite() {
        Some(finite) => (finite, Evidence::Proved),
        None => {
            let n = n_window as i64;
            let half = n / 2;
            let mut outer = 0u64;
            let mut inner = 0u64;
            for x in -n..=n {
                match s.apply(x) {
                    Ok(y) if y == x => {
                        outer += 1;
                        if x.abs() <= half {
                            inner += 1;
                        }
                    }
                    Ok(_) => {}
                    Err(_) => return (false, Evidence::WindowChecked { window: n_window }),
                }
            }
            (outer == inner, Evidence::WindowChecked { window: n_window })
        }
    }
}

pub fn classify_structural(s: &Scheme, n_window: u64) -> StructuralReport {
    let order = order(s);
    let is_local_finite = order.is_finite();
    let is_wild = s
        .families
        .iter()
        .any(|f| matches!(f, OrbitFamily::InfCycleFamily { .. }));
    let (is_ringed, ringed_evidence) = ringed(s, n_window);
    let in_i_n = order.finite().filter(|&n| n >= 2);
    StructuralReport {
        order,
        is_local_finite,
        is_ringed,
        ringed_evidence,
        is_wild,
        in_i_n,
    }
}
