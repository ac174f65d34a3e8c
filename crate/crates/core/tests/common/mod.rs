#![allow(dead_code)]

use std::fs;
use std::path::PathBuf;

use infperm::class::{Cardinal, ClassSpec, Mode, OrbitCensus, OrbitSize};
use infperm::scheme::Scheme;
use infperm::seq::{IndexDomain, Sequence};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> Scheme {
    let path = fixtures_dir().join(format!("{name}.json"));
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Scheme::from_json(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Every fixture, sorted by file name.
pub fn all_fixtures() -> Vec<(String, Scheme)> {
    let mut names: Vec<String> = fs::read_dir(fixtures_dir())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "json")
                .then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|n| (n.clone(), fixture(&n)))
        .collect()
}

// Random injective expression trees. Every node is injective by
// construction: interleaves and splices partition a single inner sequence.

fn raw_reindex(base: Sequence, index: Sequence) -> Sequence {
    Sequence::Reindex {
        base: Box::new(base),
        index: Box::new(index),
    }
}

fn nonzero<R: Rng>(rng: &mut R, k: i64) -> i64 {
    let a = rng.gen_range(1..=k);
    if rng.gen_bool(0.5) {
        a
    } else {
        -a
    }
}

/// Naturals-indexed, naturals-valued injective index maps.
pub fn nat_index<R: Rng>(rng: &mut R, depth: u32) -> Sequence {
    if depth == 0 || rng.gen_bool(0.35) {
        return Sequence::nat(rng.gen_range(1..=4), rng.gen_range(0..=5));
    }
    match rng.gen_range(0..3) {
        0 => {
            let inner = nat_index(rng, depth - 1);
            let k = rng.gen_range(2..=3);
            let mut parts: Vec<Sequence> = (0..k)
                .map(|j| raw_reindex(inner.clone(), Sequence::nat(k, j)))
                .collect();
            parts.shuffle(rng);
            Sequence::Interleave { parts }
        }
        1 => Sequence::DyadicRow {
            base: Box::new(nat_index(rng, depth - 1)),
            row: rng.gen_range(0..=3),
        },
        _ => raw_reindex(nat_index(rng, depth - 1), nat_index(rng, depth - 1)),
    }
}

pub fn nat_seq<R: Rng>(rng: &mut R, depth: u32) -> Sequence {
    if depth == 0 || rng.gen_bool(0.25) {
        return Sequence::nat(nonzero(rng, 5), rng.gen_range(-20..=20));
    }
    match rng.gen_range(0..4) {
        0 => {
            let inner = nat_seq(rng, depth - 1);
            let k = rng.gen_range(2..=4);
            let mut parts: Vec<Sequence> = (0..k)
                .map(|j| raw_reindex(inner.clone(), Sequence::nat(k, j)))
                .collect();
            parts.shuffle(rng);
            Sequence::Interleave { parts }
        }
        1 => Sequence::DyadicRow {
            base: Box::new(nat_seq(rng, depth - 1)),
            row: rng.gen_range(0..=3),
        },
        2 => raw_reindex(nat_seq(rng, depth - 1), nat_index(rng, depth - 1)),
        _ => raw_reindex(int_seq(rng, depth - 1), Sequence::nat_to_int()),
    }
}

pub fn int_seq<R: Rng>(rng: &mut R, depth: u32) -> Sequence {
    if depth == 0 || rng.gen_bool(0.25) {
        return Sequence::int(nonzero(rng, 5), rng.gen_range(-20..=20));
    }
    match rng.gen_range(0..3) {
        0 => {
            let inner = nat_seq(rng, depth - 1);
            let c = rng.gen_range(0..=4i64);
            let middle = (0..c).map(|i| inner.eval(i).unwrap()).collect();
            Sequence::Splice {
                left: Box::new(raw_reindex(inner.clone(), Sequence::nat(2, c))),
                middle,
                right: Box::new(raw_reindex(inner, Sequence::nat(2, c + 1))),
            }
        }
        1 => raw_reindex(
            int_seq(rng, depth - 1),
            Sequence::int(
                if rng.gen_bool(0.5) { 1 } else { -1 },
                rng.gen_range(-5..=5),
            ),
        ),
        _ => raw_reindex(nat_seq(rng, depth - 1), Sequence::int_to_nat()),
    }
}

pub fn finite_seq<R: Rng>(rng: &mut R, depth: u32) -> Sequence {
    let len = rng.gen_range(0..=8usize);
    if depth == 0 || rng.gen_bool(0.5) {
        let mut pool: Vec<i64> = (-30..=30).collect();
        pool.shuffle(rng);
        return Sequence::Finite {
            elements: pool[..len].to_vec(),
        };
    }
    let mut idx: Vec<i64> = (0..40).collect();
    idx.shuffle(rng);
    raw_reindex(
        nat_seq(rng, depth - 1),
        Sequence::Finite {
            elements: idx[..len].to_vec(),
        },
    )
}

/// A random injective tree of depth at most `depth`.
pub fn random_tree<R: Rng>(rng: &mut R, depth: u32) -> Sequence {
    match rng.gen_range(0..5) {
        0 | 1 => nat_seq(rng, depth),
        2 | 3 => int_seq(rng, depth),
        _ => finite_seq(rng, depth),
    }
}

pub fn affine_domain(s: &Sequence) -> Option<IndexDomain> {
    match s {
        Sequence::Affine { domain, .. } => Some(*domain),
        _ => None,
    }
}

// Class membership.

/// Membership by enumerating every set partition of a finite orbit list.
pub fn oracle_member(orbits: &[u64], spec: &ClassSpec) -> bool {
    let n = orbits.len();
    let mut labels = vec![0usize; n];
    loop {
        let blocks = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut sums = vec![0u64; blocks];
        for (i, &l) in labels.iter().enumerate() {
            sums[l] += orbits[i];
        }
        let count_ok = fits(Cardinal::Fin(blocks as u64), spec.parts, spec.parts_mode);
        if count_ok
            && sums
                .iter()
                .all(|&s| fits(Cardinal::Fin(s), spec.size, spec.size_mode))
        {
            return true;
        }
        if !next_growth_string(&mut labels) {
            return false;
        }
    }
}

fn fits(value: Cardinal, bound: Cardinal, mode: Mode) -> bool {
    match mode {
        Mode::AtMost => value <= bound,
        Mode::Exactly => value == bound,
    }
}

/// Advances a restricted growth string; false after the last one.
fn next_growth_string(a: &mut [usize]) -> bool {
    let n = a.len();
    if n <= 1 {
        return false;
    }
    let mut i = n - 1;
    loop {
        let max_prefix = a[..i].iter().copied().max().unwrap();
        if a[i] <= max_prefix {
            a[i] += 1;
            for x in &mut a[i + 1..] {
                *x = 0;
            }
            return true;
        }
        if i == 1 {
            return false;
        }
        i -= 1;
    }
}

pub fn census_of(orbits: &[u64]) -> OrbitCensus {
    let mut c = OrbitCensus::new();
    for &s in orbits {
        c.add(OrbitSize::Finite(s), Cardinal::ONE).unwrap();
    }
    c
}

/// Multisets of `k` sizes from `lo..=hi`, nondecreasing.
pub fn multisets(k: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for m in multisets(k - 1, lo, hi) {
        let start = m.last().copied().unwrap_or(lo);
        for s in start..=hi {
            let mut v = m.clone();
            v.push(s);
            out.push(v);
        }
    }
    out
}

pub fn random_cardinal<R: Rng>(rng: &mut R, max: u64) -> Cardinal {
    if rng.gen_bool(0.2) {
        Cardinal::Aleph0
    } else {
        Cardinal::Fin(rng.gen_range(0..=max))
    }
}

/// Censuses mixing finite and infinite counts and infinite orbits.
pub fn random_census<R: Rng>(rng: &mut R) -> OrbitCensus {
    let mut c = OrbitCensus::new();
    for _ in 0..rng.gen_range(0..=4) {
        let size = if rng.gen_bool(0.15) {
            OrbitSize::Infinite
        } else {
            OrbitSize::Finite(rng.gen_range(2..=9))
        };
        let count = if rng.gen_bool(0.3) {
            Cardinal::Aleph0
        } else {
            Cardinal::Fin(rng.gen_range(1..=4))
        };
        c.add(size, count).unwrap();
    }
    c
}

pub fn all_specs(a: Cardinal, b: Cardinal) -> [ClassSpec; 4] {
    [
        ClassSpec::w(a, b),
        ClassSpec::k(a, b),
        ClassSpec::r(a, b),
        ClassSpec::s(a, b),
    ]
}
