//! Searches for nontrivial difference sets in `C_p`, `p` prime.
//!
//! The exhaustive search relies only on the counting identity: it fixes
//! `k < p/2` from the feasible parameters, normalizes `{0, 1}` into `D`
//! (every affine image `tD + c` of a difference set is one, and some affine
//! map sends any two elements of `D` to `0` and `1`), and backtracks over
//! increasing elements while no difference occurs more than `lambda` times.
//! Of each affine class only the lexicographically least member is kept:
//! a prefix `S` is dropped when an affine map sending two of its elements to
//! `0` and `1` turns it into a smaller set, since the same map then makes
//! every extension smaller too. Affine images and complements of the hits
//! give every difference set.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::arith::{cofactor_prime, inverse_mod, is_prime, pow_mod, primitive_root};
use super::{feasible_parameters, is_difference_set, DifferenceSetRecord};
use crate::error::{Error, Result};
use crate::groups::{make_cyclic, GroupSubset};

/// Largest prime accepted by [`search_exhaustive`].
pub const EXHAUSTIVE_MAX_PRIME: usize = 61;

/// Default cap on backtracking nodes for the exhaustive search.
pub const DEFAULT_DIFFSET_BUDGET: u64 = 20_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Every difference set.
    All,
    /// The lexicographically least translate of each.
    UpToTranslation,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(SearchMode::All),
            "up_to_translation" | "up-to-translation" => Ok(SearchMode::UpToTranslation),
            _ => Err(Error::InvalidArgument(format!("unknown search mode `{s}`"))),
        }
    }
}

pub fn search_exhaustive(p: usize, mode: SearchMode) -> Result<Vec<DifferenceSetRecord>> {
    search_exhaustive_with(p, mode, DEFAULT_DIFFSET_BUDGET).map(|(records, _)| records)
}

/// [`search_exhaustive`] with an explicit node budget; also returns the
/// number of nodes visited.
pub fn search_exhaustive_with(p: usize, mode: SearchMode, budget: u64) -> Result<(Vec<DifferenceSetRecord>, u64)> {
    if !is_prime(p as u64) || p > EXHAUSTIVE_MAX_PRIME {
        return Err(Error::InvalidArgument(format!(
            "exhaustive search needs a prime at most {EXHAUSTIVE_MAX_PRIME}, got {p}"
        )));
    }
    let nodes = AtomicU64::new(0);
    let mut hits: Vec<u128> = Vec::new();
    for (k, lambda) in feasible_parameters(p) {
        if 2 * k >= p {
            continue;
        }
        hits.extend(normalized_sets(p, k, lambda, budget, &nodes)?);
    }
    let mut all: BTreeSet<u128> = BTreeSet::new();
    for s in hits {
        for t in 1..p {
            let scaled = map_set(p, s, |x| x * t % p);
            for c in 0..p {
                let image = rotate(p, scaled, c);
                all.insert(image);
                all.insert(full(p) & !image);
            }
        }
    }
    let group = Arc::new(make_cyclic(p)?);
    let sets: BTreeSet<Vec<usize>> = all
        .into_iter()
        .map(|m| {
            let s = GroupSubset::from_bits(m);
            match mode {
                SearchMode::All => s.to_vec(),
                SearchMode::UpToTranslation => canonical_translate(p, s),
            }
        })
        .collect();
    let mut records = sets
        .into_iter()
        .map(|elems| {
            let set: GroupSubset = elems.into_iter().collect();
            is_difference_set(&group, set)?.ok_or_else(|| Error::Alarm("search produced a non-difference set".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    records.sort_by_key(|r| (r.k, r.elements()));
    Ok((records, nodes.load(Ordering::Relaxed)))
}

fn full(p: usize) -> u128 {
    if p == 128 {
        u128::MAX
    } else {
        (1u128 << p) - 1
    }
}

fn map_set(p: usize, s: u128, f: impl Fn(usize) -> usize) -> u128 {
    (0..p).filter(|&x| s >> x & 1 == 1).fold(0, |acc, x| acc | 1 << f(x))
}

fn rotate(p: usize, s: u128, c: usize) -> u128 {
    if c == 0 {
        s
    } else {
        ((s << c) | (s >> (p - c))) & full(p)
    }
}

/// The lexicographically least sorted element list among the translates of `s` in `C_p`.
pub fn canonical_translate(p: usize, s: GroupSubset) -> Vec<usize> {
    (0..p)
        .map(|c| {
            let mut v: Vec<usize> = s.iter().map(|x| (x + c) % p).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default()
}

/// Canonical translates of the records, for comparing searches.
pub fn translation_classes(records: &[DifferenceSetRecord]) -> BTreeSet<Vec<usize>> {
    records.iter().map(|r| canonical_translate(r.v, r.set())).collect()
}

/// The lexicographically least members of the affine classes of
/// `(p, k, lambda)` difference sets; each contains `0` and `1`.
fn normalized_sets(p: usize, k: usize, lambda: usize, budget: u64, nodes: &AtomicU64) -> Result<Vec<u128>> {
    let stop = AtomicBool::new(false);
    let inverse: Vec<usize> = (0..p).map(|x| inverse_mod(x as u64, p as u64).unwrap_or(0) as usize).collect();
    let product: Vec<u8> = (0..p * p).map(|i| ((i / p) * (i % p) % p) as u8).collect();
    let mut found: Vec<u128> = (2..p)
        .into_par_iter()
        .map(|third| {
            let mut s = Backtrack {
                p,
                k,
                lambda: lambda as u8,
                counts: vec![0u8; p],
                chosen: Vec::with_capacity(k),
                own: 0,
                inverse: &inverse,
                product: &product,
                found: Vec::new(),
                local_nodes: 0,
                budget,
                nodes,
                stop: &stop,
            };
            s.push(0);
            s.push(1);
            if k == 2 {
                if third == 2 {
                    s.found.push(s.own);
                }
            } else if s.push(third) && s.is_least_image() {
                s.extend(third + 1);
            }
            s.flush();
            s.found
        })
        .flatten()
        .collect();
    if stop.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded { what: "difference-set search node", budget });
    }
    found.sort_unstable();
    Ok(found)
}

struct Backtrack<'a> {
    p: usize,
    k: usize,
    lambda: u8,
    /// `counts[d]`: ordered pairs of chosen elements with difference `d`.
    counts: Vec<u8>,
    chosen: Vec<usize>,
    own: u128,
    inverse: &'a [usize],
    product: &'a [u8],
    found: Vec<u128>,
    local_nodes: u64,
    budget: u64,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
}

/// Prefixes longer than this skip the least-image test; the subtrees below
/// are small and the test costs more than it saves there.
const LEAST_IMAGE_DEPTH: usize = 10;

impl Backtrack<'_> {
    /// Adds `e` if no difference count exceeds `lambda`; otherwise leaves
    /// the state unchanged.
    fn push(&mut self, e: usize) -> bool {
        let p = self.p;
        for i in 0..self.chosen.len() {
            let d = (e + p - self.chosen[i]) % p;
            self.counts[d] += 1;
            self.counts[p - d] += 1;
            if self.counts[d] > self.lambda || self.counts[p - d] > self.lambda {
                for &c in &self.chosen[..=i] {
                    let d = (e + p - c) % p;
                    self.counts[d] -= 1;
                    self.counts[p - d] -= 1;
                }
                return false;
            }
        }
        self.chosen.push(e);
        self.own |= 1 << e;
        true
    }

    fn pop(&mut self) {
        let p = self.p;
        let e = self.chosen.pop().unwrap();
        self.own &= !(1 << e);
        for &c in &self.chosen {
            let d = (e + p - c) % p;
            self.counts[d] -= 1;
            self.counts[p - d] -= 1;
        }
    }

    /// Whether no map `x -> (x - a)/(b - a)` with `a != b` chosen makes the
    /// chosen set lexicographically smaller.
    fn is_least_image(&self) -> bool {
        let p = self.p;
        if self.chosen.len() > LEAST_IMAGE_DEPTH {
            return true;
        }
        for &a in &self.chosen {
            for &b in &self.chosen {
                if a == b {
                    continue;
                }
                let scale = self.inverse[(b + p - a) % p];
                let image = self
                    .chosen
                    .iter()
                    .fold(0u128, |acc, &x| acc | 1 << self.product[(x + p - a) % p * p + scale]);
                let diff = image ^ self.own;
                // the smaller sorted sequence owns the least differing element
                if diff != 0 && image >> diff.trailing_zeros() & 1 == 1 {
                    return false;
                }
            }
        }
        true
    }

    fn flush(&mut self) {
        let total = self.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
        self.local_nodes = 0;
        if total > self.budget {
            self.stop.store(true, Ordering::Relaxed);
        }
    }

    fn extend(&mut self, from: usize) {
        self.local_nodes += 1;
        if self.local_nodes >= 1 << 16 {
            self.flush();
        }
        if self.stop.load(Ordering::Relaxed) {
            return;
        }
        if self.chosen.len() == self.k {
            // k(k-1) = (p-1) lambda and no count exceeds lambda, so all equal lambda
            self.found.push(self.own);
            return;
        }
        let need = self.k - self.chosen.len();
        for e in from..self.p {
            if self.p - e < need {
                break;
            }
            if self.push(e) {
                if self.is_least_image() {
                    self.extend(e + 1);
                }
                self.pop();
            }
        }
    }
}

/// Difference sets in `C_p`, `p = 4q + 1` with `q` an odd prime, among the
/// unions of orbits of an automorphism `x -> t x` of order `q`, with or
/// without `0`. Those orbits are the cyclotomic classes of order 4.
pub fn search_multiplier_pruned(p: usize) -> Result<Vec<DifferenceSetRecord>> {
    let q = cofactor_prime(p as u64, 4)
        .filter(|&q| q > 2)
        .ok_or_else(|| Error::InvalidArgument(format!("{p} is not 4q+1 with q an odd prime")))?;
    let p64 = p as u64;
    let t = pow_mod(primitive_root(p64), 4, p64);
    debug_assert_eq!(super::arith::mult_order(t, p64), q);
    let mut orbits: Vec<GroupSubset> = Vec::new();
    let mut seen = GroupSubset::singleton(0);
    for x in 1..p {
        if seen.contains(x) {
            continue;
        }
        let orbit: GroupSubset = (0..q).map(|i| (x as u64 * pow_mod(t, i, p64) % p64) as usize).collect();
        seen = seen.union(orbit);
        orbits.push(orbit);
    }
    let group = Arc::new(make_cyclic(p)?);
    let mut out = Vec::new();
    for choice in 0u32..1 << orbits.len() {
        let union = orbits
            .iter()
            .enumerate()
            .filter(|(i, _)| choice >> i & 1 == 1)
            .fold(GroupSubset::EMPTY, |acc, (_, &o)| acc.union(o));
        for set in [union, union.union(GroupSubset::singleton(0))] {
            if set.len() < 2 || set.len() + 2 > p {
                continue;
            }
            if let Some(rec) = is_difference_set(&group, set)? {
                out.push(rec);
            }
        }
    }
    out.sort_by_key(|r| (r.k, r.elements()));
    out.dedup_by_key(|r| r.set());
    Ok(out)
}
