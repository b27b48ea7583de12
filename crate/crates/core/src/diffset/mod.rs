//! Difference sets in abelian groups, mostly cyclic ones of prime order.
//!
//! A `k`-subset `D` of a group of order `v` is a `(v, k, lambda)` difference
//! set when every non-identity element is `d1^-1 d2` for exactly `lambda`
//! ordered pairs of `D`. Elements are group indices; for cyclic groups the
//! index `i` is `a^i`, so subsets of `C_v` read as residues mod `v`.

pub mod arith;
mod cyclotomy;
mod search;

use std::sync::Arc;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{make_cyclic, FiniteGroup, GroupSubset};
use crate::permgrp::{PermGroup, Permutation};

pub use cyclotomy::{quartic_cyclotomy, QuarticCyclotomy, YOrientation};
pub use search::{
    canonical_translate, search_exhaustive, search_exhaustive_with, search_multiplier_pruned, translation_classes, SearchMode,
    DEFAULT_DIFFSET_BUDGET, EXHAUSTIVE_MAX_PRIME,
};

use arith::{gcd, is_prime};

/// A certified difference set.
#[derive(Clone)]
pub struct DifferenceSetRecord {
    group: Arc<FiniteGroup>,
    set: GroupSubset,
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
}

impl std::fmt::Debug for DifferenceSetRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{}) {:?}", self.v, self.k, self.lambda, self.set)
    }
}

impl PartialEq for DifferenceSetRecord {
    fn eq(&self, other: &Self) -> bool {
        self.group.spec() == other.group.spec() && self.set == other.set
    }
}

impl Eq for DifferenceSetRecord {}

impl DifferenceSetRecord {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn set(&self) -> GroupSubset {
        self.set
    }

    pub fn elements(&self) -> Vec<usize> {
        self.set.to_vec()
    }

    /// The order `k - lambda`.
    pub fn n(&self) -> usize {
        self.k - self.lambda.min(self.k)
    }

    /// `|D|` outside `[2, v - 2]`.
    pub fn is_trivial(&self) -> bool {
        self.k < 2 || self.k + 2 > self.v
    }

    pub fn parameters(&self) -> (usize, usize, usize) {
        (self.v, self.k, self.lambda)
    }

    pub fn to_serialized(&self) -> SerializedRecord {
        let multipliers = if self.is_trivial() {
            Vec::new()
        } else {
            multiplier_group(self).map(|m| m.multipliers()).unwrap_or_default()
        };
        SerializedRecord {
            v: self.v,
            k: self.k,
            lambda: self.lambda,
            elements: self.elements(),
            multipliers,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedRecord {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub elements: Vec<usize>,
    pub multipliers: Vec<usize>,
}

/// The record for `d` if its difference multiset is flat.
pub fn is_difference_set(group: &Arc<FiniteGroup>, d: GroupSubset) -> Result<Option<DifferenceSetRecord>> {
    if !group.is_abelian() {
        return Err(Error::NonAbelian);
    }
    let v = group.order();
    if !d.is_subset(group.elements()) {
        return Err(Error::InvalidArgument("subset outside the group".into()));
    }
    let k = d.len();
    let mut counts = vec![0usize; v];
    let elems = d.to_vec();
    for &x in &elems {
        let xi = group.inv(x);
        for &y in &elems {
            if x != y {
                counts[group.mul(xi, y)] += 1;
            }
        }
    }
    let lambda = if v > 1 { counts[1..].iter().copied().max().unwrap() } else { 0 };
    if counts[1..].iter().any(|&c| c != lambda) {
        return Ok(None);
    }
    Ok(Some(DifferenceSetRecord {
        group: group.clone(),
        set: d,
        v,
        k,
        lambda,
    }))
}

/// [`is_difference_set`] over `C_v`, with `d` given as residues.
pub fn cyclic_difference_set(v: usize, d: &[usize]) -> Result<Option<DifferenceSetRecord>> {
    let g = Arc::new(make_cyclic(v)?);
    let set: GroupSubset = d.iter().map(|&x| x % v).collect();
    is_difference_set(&g, set)
}

/// The complementary difference set, with parameters `(v, v - k, v - 2k + lambda)`.
pub fn complement(rec: &DifferenceSetRecord) -> DifferenceSetRecord {
    let (v, k, lambda) = rec.parameters();
    let out = DifferenceSetRecord {
        group: rec.group.clone(),
        set: rec.group.elements().difference(rec.set),
        v,
        k: v - k,
        lambda: v + lambda - 2 * k,
    };
    debug_assert_eq!(out.k * out.k.saturating_sub(1), (v - 1) * out.lambda);
    out
}

/// Nontrivial `(k, lambda)` with `k(k-1) = (v-1) lambda` and `2 <= k <= v-2`.
///
/// When `v` is prime the list is filtered further: empty for Fermat primes,
/// `k` in `{q, q+1}` and complements for `v = 2q+1`, and `k = 2q` dropped for
/// `v = 4q+1` with `q` an odd prime.
pub fn feasible_parameters(v: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (2..v.saturating_sub(1))
        .filter(|&k| (k * (k - 1)) % (v - 1) == 0)
        .map(|k| (k, k * (k - 1) / (v - 1)))
        .collect();
    let p = v as u64;
    if !is_prime(p) {
        return out;
    }
    if arith::is_fermat_prime(p) {
        out.clear();
    } else if let Some(q) = arith::cofactor_prime(p, 2).filter(|&q| q > 2) {
        let q = q as usize;
        out.retain(|&(k, _)| [q, q + 1].contains(&k));
    } else if let Some(q) = arith::cofactor_prime(p, 4).filter(|&q| q > 2) {
        let q = q as usize;
        out.retain(|&(k, _)| k != 2 * q && k != v - 2 * q);
    }
    out
}

/// Image of `d` under the power map `x -> x^t`.
pub fn power_image(group: &FiniteGroup, d: GroupSubset, t: usize) -> GroupSubset {
    d.iter().map(|x| power(group, x, t)).collect()
}

fn power(group: &FiniteGroup, x: usize, t: usize) -> usize {
    (0..t).fold(group.identity(), |acc, _| group.mul(acc, x))
}

/// A translate `g` with `D^(t) = D g`, if `t` is a multiplier of `D`.
pub fn multiplier_test(rec: &DifferenceSetRecord, t: usize) -> Result<Option<usize>> {
    if gcd(t as u64, rec.v as u64) != 1 {
        return Err(Error::InvalidArgument(format!("multiplier {t} is not coprime to {}", rec.v)));
    }
    let g = &rec.group;
    let image = power_image(g, rec.set, t);
    let anchor = rec.set.least();
    Ok(match (anchor, image.least()) {
        (None, _) | (_, None) => Some(g.identity()),
        (Some(d0), _) => image
            .iter()
            .map(|y| g.mul(g.inv(d0), y))
            .filter(|&s| g.right_translate(rec.set, s) == image)
            .min(),
    })
}

/// The numerical multipliers of a difference set and the group `M(D)` of
/// power maps they induce.
#[derive(Clone, Debug)]
pub struct MultiplierData {
    /// `(t, g)` with `D^(t) = D g`, for every multiplier `1 <= t < v`.
    pub witnesses: Vec<(usize, usize)>,
    pub group: PermGroup,
}

impl MultiplierData {
    pub fn multipliers(&self) -> Vec<usize> {
        self.witnesses.iter().map(|w| w.0).collect()
    }

    pub fn order(&self) -> usize {
        self.witnesses.len()
    }
}

pub fn multiplier_group(rec: &DifferenceSetRecord) -> Result<MultiplierData> {
    let v = rec.v;
    let mut witnesses = Vec::new();
    for t in 1..v.max(2) {
        if gcd(t as u64, v as u64) != 1 {
            continue;
        }
        if let Some(g) = multiplier_test(rec, t)? {
            witnesses.push((t, g));
        }
    }
    let gens = witnesses
        .iter()
        .map(|&(t, _)| Permutation::new((0..v).map(|x| power(&rec.group, x, t)).collect()))
        .collect::<Result<std::collections::BTreeSet<_>>>()?;
    let distinct = gens.len();
    let group = PermGroup::from_generators(v, gens.into_iter().collect())?;
    if group.order() != &num_bigint::BigUint::from(distinct) {
        return Err(Error::Alarm("multipliers are not closed under products".into()));
    }
    Ok(MultiplierData { witnesses, group })
}

/// The first translate `D g` (in index order of `g`) that every element of
/// `M` maps onto itself.
pub fn invariant_translate(rec: &DifferenceSetRecord, m: &MultiplierData) -> Result<GroupSubset> {
    let g = &rec.group;
    for s in 0..rec.v {
        let candidate = g.right_translate(rec.set, s);
        if m.group.generators().iter().all(|p| candidate.iter().all(|x| candidate.contains(p.apply(x)))) {
            return Ok(candidate);
        }
    }
    Err(Error::Alarm("no translate is invariant under the multiplier group".into()))
}

/// Residues `x^e` for `x` in `1..p`.
fn power_residues(p: usize, e: usize) -> GroupSubset {
    (1..p).map(|x| arith::pow_mod(x as u64, e as u64, p as u64) as usize).collect()
}

/// The quadratic residues mod a prime `p = 3 (mod 4)`.
pub fn paley_set(p: usize) -> Result<DifferenceSetRecord> {
    if !is_prime(p as u64) || p % 4 != 3 {
        return Err(Error::InvalidArgument(format!("{p} is not a prime congruent to 3 mod 4")));
    }
    validated(p, power_residues(p, 2))
}

/// Which set [`biquadratic_set`] returned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BiquadraticVariant {
    Residues,
    ResiduesWithZero,
}

/// Quartic residues mod `p = 4t^2 + 1`, or quartic residues together with
/// `0` mod `p = 4t^2 + 9`, for odd `t`. For the second family both variants
/// are tried and the one that is a difference set is returned.
pub fn biquadratic_set(p: usize) -> Result<(DifferenceSetRecord, BiquadraticVariant)> {
    let bad = || Error::InvalidArgument(format!("{p} is not a prime 4t^2+1 or 4t^2+9 with t odd"));
    if !is_prime(p as u64) {
        return Err(bad());
    }
    let t_of = |c: usize| -> Option<usize> {
        let r = p.checked_sub(c)?;
        (r % 4 == 0 && arith::is_square((r / 4) as u64)).then(|| ((r / 4) as u64).sqrt() as usize)
    };
    let quartic = power_residues(p, 4);
    if t_of(1).is_some_and(|t| t % 2 == 1) {
        return Ok((validated(p, quartic)?, BiquadraticVariant::Residues));
    }
    if t_of(9).is_some_and(|t| t % 2 == 1) {
        let with_zero = quartic.union(GroupSubset::singleton(0));
        for (set, variant) in [
            (with_zero, BiquadraticVariant::ResiduesWithZero),
            (quartic, BiquadraticVariant::Residues),
        ] {
            if let Ok(rec) = validated(p, set) {
                return Ok((rec, variant));
            }
        }
        return Err(Error::Alarm(format!("no quartic-residue difference set mod {p}")));
    }
    Err(bad())
}

fn validated(p: usize, set: GroupSubset) -> Result<DifferenceSetRecord> {
    let g = Arc::new(make_cyclic(p)?);
    match is_difference_set(&g, set)? {
        Some(rec) if !rec.is_trivial() => Ok(rec),
        _ => Err(Error::Alarm(format!("construction mod {p} is not a difference set"))),
    }
}

#[cfg(test)]
mod tests;
