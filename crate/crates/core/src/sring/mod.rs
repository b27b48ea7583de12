//! S-rings over small groups: verification, structure constants, derived
//! subgroups, and constructions.

mod closure;
mod constructions;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AxiomViolation, Error, Result};
use crate::groups::{all_subgroups, all_automorphisms, FiniteGroup, GroupSubset, Subgroup};
use crate::permgrp::PermGroup;

pub use closure::{sring_closure, Refiner};
pub use constructions::{cyclotomic, from_difference_set, from_perm_group, quotient_sring, wreath};

/// A verified S-ring: a partition of the group into basic sets.
///
/// Classes are kept in canonical order, sorted by `(size, least element)`,
/// so class `0` is always `{e}`.
#[derive(Clone)]
pub struct SRing {
    group: Arc<FiniteGroup>,
    classes: Vec<GroupSubset>,
    class_of: Vec<u16>,
    inverse: Vec<usize>,
}

impl PartialEq for SRing {
    fn eq(&self, other: &Self) -> bool {
        self.group.spec() == other.group.spec() && self.classes == other.classes
    }
}

impl Eq for SRing {}

impl fmt::Debug for SRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SRing({}, ", self.group.spec())?;
        f.debug_list().entries(self.classes.iter()).finish()?;
        write!(f, ")")
    }
}

/// Puts classes in canonical order.
pub(crate) fn canonical_order(classes: &mut [GroupSubset]) {
    classes.sort_by_key(|c| (c.len(), c.least()));
}

/// Checks the S-ring axioms for `partition` and returns the S-ring, or the
/// first violated axiom with a witness. Class indices in the witness refer
/// to canonical order.
pub fn verify_sring(group: Arc<FiniteGroup>, partition: &[GroupSubset]) -> Result<SRing> {
    let n = group.order();
    let mut cover = vec![0usize; n];
    for c in partition {
        for x in c.iter() {
            if x >= n {
                return Err(Error::InvalidArgument(format!("element {x} outside a group of order {n}")));
            }
            cover[x] += 1;
        }
    }
    if let Some((x, &k)) = cover.iter().enumerate().find(|&(_, &k)| k != 1) {
        return Err(AxiomViolation::NotAPartition(x, k).into());
    }
    let mut classes: Vec<GroupSubset> = partition.iter().copied().filter(|c| !c.is_empty()).collect();
    canonical_order(&mut classes);
    if classes[0] != GroupSubset::singleton(0) {
        return Err(AxiomViolation::IdentityNotSingleton.into());
    }
    let mut class_of = vec![0u16; n];
    for (i, c) in classes.iter().enumerate() {
        for x in c.iter() {
            class_of[x] = i as u16;
        }
    }
    let mut inverse = Vec::with_capacity(classes.len());
    for (i, &c) in classes.iter().enumerate() {
        let ci = group.inverse_set(c);
        let j = class_of[ci.least().unwrap()] as usize;
        if classes[j] != ci {
            return Err(AxiomViolation::InverseNotClass { class: i }.into());
        }
        inverse.push(j);
    }
    let sring = SRing {
        group,
        classes,
        class_of,
        inverse,
    };
    sring.check_counts()?;
    Ok(sring)
}

impl SRing {
    /// Builds without checking; callers guarantee the axioms.
    pub(crate) fn from_verified_parts(group: Arc<FiniteGroup>, mut classes: Vec<GroupSubset>) -> SRing {
        canonical_order(&mut classes);
        let n = group.order();
        let mut class_of = vec![0u16; n];
        for (i, c) in classes.iter().enumerate() {
            for x in c.iter() {
                class_of[x] = i as u16;
            }
        }
        let inverse = classes
            .iter()
            .map(|&c| class_of[group.inv(c.least().unwrap())] as usize)
            .collect();
        SRing {
            group,
            classes,
            class_of,
            inverse,
        }
    }

    fn check_counts(&self) -> Result<(), AxiomViolation> {
        let g = &*self.group;
        let n = g.order();
        let mut cnt = vec![0u32; n];
        for (xi, &xc) in self.classes.iter().enumerate() {
            for (yi, &yc) in self.classes.iter().enumerate() {
                cnt.iter_mut().for_each(|c| *c = 0);
                for x in xc.iter() {
                    for y in yc.iter() {
                        cnt[g.mul(x, y)] += 1;
                    }
                }
                for (zi, &zc) in self.classes.iter().enumerate() {
                    let z = zc.least().unwrap();
                    if let Some(w) = zc.iter().find(|&w| cnt[w] != cnt[z]) {
                        return Err(AxiomViolation::NonConstantCount {
                            x: xi,
                            y: yi,
                            class: zi,
                            z,
                            w,
                            count_z: cnt[z],
                            count_w: cnt[w],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// `{{e}, G \ {e}}`.
    pub fn rank_two(group: Arc<FiniteGroup>) -> SRing {
        let n = group.order();
        let mut classes = vec![GroupSubset::singleton(0)];
        if n > 1 {
            classes.push(GroupSubset::full(n).difference(GroupSubset::singleton(0)));
        }
        SRing::from_verified_parts(group, classes)
    }

    /// The group ring itself: every class a singleton.
    pub fn discrete(group: Arc<FiniteGroup>) -> SRing {
        let classes = (0..group.order()).map(GroupSubset::singleton).collect();
        SRing::from_verified_parts(group, classes)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[GroupSubset] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> GroupSubset {
        self.classes[i]
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    /// Index of the class `X^-1` for class index `i`.
    pub fn inverse_class(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn is_symmetric(&self) -> bool {
        self.inverse.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Whether `set` is a union of basic sets.
    pub fn is_a_set(&self, set: GroupSubset) -> bool {
        set.iter().all(|x| self.classes[self.class_of(x)].is_subset(set))
    }

    /// Every subgroup that is a union of basic sets, sorted by order.
    pub fn a_subgroups(&self) -> Vec<Subgroup> {
        all_subgroups(&self.group)
            .expect("order within cap")
            .into_iter()
            .filter(|h| self.is_a_set(h.elements))
            .collect()
    }

    /// `<X>` for an A-set `X`.
    pub fn generated_subgroup(&self, set: GroupSubset) -> Result<Subgroup> {
        if !self.is_a_set(set) {
            return Err(Error::NotAnASet);
        }
        self.group.subgroup(self.group.closure(set))
    }

    /// `rad(X) = {g : gX = Xg = X}` for an A-set `X`.
    pub fn radical(&self, set: GroupSubset) -> Result<Subgroup> {
        if !self.is_a_set(set) {
            return Err(Error::NotAnASet);
        }
        let g = &*self.group;
        let rad: GroupSubset = (0..g.order())
            .filter(|&h| g.left_translate(h, set) == set && g.right_translate(set, h) == set)
            .collect();
        g.subgroup(rad)
    }

    pub fn is_primitive(&self) -> bool {
        self.a_subgroups().len() <= 2
    }

    /// Automorphisms of the group fixing every basic set.
    pub fn cayley_automorphisms(&self) -> PermGroup {
        let auts = all_automorphisms(&self.group).expect("order within cap");
        let gens = auts
            .into_iter()
            .filter(|a| self.classes.iter().all(|&c| c.iter().all(|x| c.contains(a.apply(x)))))
            .map(|a| a.into_permutation())
            .collect();
        PermGroup::from_generators(self.group.order(), gens).expect("automorphisms are permutations")
    }

    pub fn structure_constants(&self) -> StructureConstants {
        let g = &*self.group;
        let n = g.order();
        let r = self.rank();
        let mut rows = Vec::with_capacity(r * r);
        let mut cnt = vec![0u32; n];
        for &xc in &self.classes {
            for &yc in &self.classes {
                cnt.iter_mut().for_each(|c| *c = 0);
                for x in xc.iter() {
                    for y in yc.iter() {
                        cnt[g.mul(x, y)] += 1;
                    }
                }
                let row = self
                    .classes
                    .iter()
                    .enumerate()
                    .filter_map(|(zi, zc)| {
                        let c = cnt[zc.least().unwrap()];
                        (c > 0).then_some((zi as u32, c))
                    })
                    .collect();
                rows.push(row);
            }
        }
        StructureConstants {
            rank: r,
            sizes: self.classes.iter().map(|c| c.len() as u32).collect(),
            inverse: self.inverse.clone(),
            rows,
        }
    }

    /// Group spec plus sorted class element lists in canonical order.
    pub fn to_serialized(&self) -> SerializedSRing {
        SerializedSRing {
            group: self.group.spec().to_string(),
            classes: self.classes.iter().map(|c| c.to_vec()).collect(),
        }
    }

    pub fn from_serialized(s: &SerializedSRing) -> Result<SRing> {
        let group = Arc::new(s.group.parse::<crate::groups::GroupSpec>()?.build()?);
        let classes: Vec<GroupSubset> = s
            .classes
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        verify_sring(group, &classes)
    }

    /// The image partition under a group automorphism (as a permutation).
    pub fn image_under(&self, perm: &crate::permgrp::Permutation) -> SRing {
        let classes = self
            .classes
            .iter()
            .map(|c| c.iter().map(|x| perm.apply(x)).collect())
            .collect();
        SRing::from_verified_parts(self.group.clone(), classes)
    }

    /// One class per line, elements space-separated; used by census files.
    pub fn to_line(&self) -> String {
        self.classes
            .iter()
            .map(|c| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SerializedSRing {
    pub group: String,
    pub classes: Vec<Vec<usize>>,
}

/// The numbers `c[X][Y][Z]` with `XY = sum_Z c[X][Y][Z] Z`, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    rank: usize,
    sizes: Vec<u32>,
    inverse: Vec<usize>,
    rows: Vec<Vec<(u32, u32)>>,
}

impl StructureConstants {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x]
    }

    pub fn get(&self, x: usize, y: usize, z: usize) -> u32 {
        let row = &self.rows[x * self.rank + y];
        row.binary_search_by_key(&(z as u32), |&(k, _)| k).map_or(0, |i| row[i].1)
    }

    /// Nonzero entries `(z, c)` of the product of classes `x` and `y`.
    pub fn row(&self, x: usize, y: usize) -> &[(u32, u32)] {
        &self.rows[x * self.rank + y]
    }

    /// A copy with one entry replaced.
    pub fn with_entry(&self, x: usize, y: usize, z: usize, value: u32) -> StructureConstants {
        let mut out = self.clone();
        let row = &mut out.rows[x * self.rank + y];
        match row.binary_search_by_key(&(z as u32), |&(k, _)| k) {
            Ok(i) if value == 0 => {
                row.remove(i);
            }
            Ok(i) => row[i].1 = value,
            Err(i) if value != 0 => row.insert(i, (z as u32, value)),
            Err(_) => {}
        }
        out
    }
}

/// Which of the three structure-constant identities failed, and where.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdentityViolation {
    /// `|Z| c[X][Y][Z^-1]`, `|X| c[Y][Z][X^-1]`, `|Y| c[Z][X][Y^-1]` differ.
    Rotation { x: usize, y: usize, z: usize, values: [u64; 3] },
    /// `sum_Y c[X][Y][Z] != |X|`.
    RowSum { x: usize, z: usize, sum: u64 },
    /// `sum_Z c[X][Y][Z] |Z| != |X||Y|`.
    SizeSum { x: usize, y: usize, sum: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: u64,
    pub violation: Option<IdentityViolation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the three identities satisfied by structure constants of any
/// S-ring, stopping at the first violation.
pub fn check_identities(sc: &StructureConstants) -> IdentityReport {
    let r = sc.rank;
    let size = |i: usize| sc.sizes[i] as u64;
    let mut checks = 0u64;
    let mut dense = vec![0u32; r * r * r];
    for x in 0..r {
        for y in 0..r {
            for &(z, c) in sc.row(x, y) {
                dense[(x * r + y) * r + z as usize] = c;
            }
        }
    }
    let c = |x: usize, y: usize, z: usize| dense[(x * r + y) * r + z] as u64;
    let fail = |v: IdentityViolation, checks: u64| IdentityReport { checks, violation: Some(v) };
    for x in 0..r {
        for z in 0..r {
            checks += 1;
            let sum: u64 = (0..r).map(|y| c(x, y, z)).sum();
            if sum != size(x) {
                return fail(IdentityViolation::RowSum { x, z, sum }, checks);
            }
        }
    }
    for x in 0..r {
        for y in 0..r {
            checks += 1;
            let sum: u64 = (0..r).map(|z| c(x, y, z) * size(z)).sum();
            if sum != size(x) * size(y) {
                return fail(IdentityViolation::SizeSum { x, y, sum }, checks);
            }
        }
    }
    for x in 0..r {
        for y in 0..r {
            for z in 0..r {
                checks += 1;
                let values = [
                    size(z) * c(x, y, sc.inverse[z]),
                    size(x) * c(y, z, sc.inverse[x]),
                    size(y) * c(z, x, sc.inverse[y]),
                ];
                if values[0] != values[1] || values[1] != values[2] {
                    return fail(IdentityViolation::Rotation { x, y, z, values }, checks);
                }
            }
        }
    }
    IdentityReport { checks, violation: None }
}

#[cfg(test)]
mod tests;
