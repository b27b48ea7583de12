use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, GroupAutomorphism, GroupSubset, Section};
use crate::permgrp::PermGroup;

use super::{verify_sring, SRing};

/// The S-ring induced on a section `B/A` by an S-ring whose A-subgroups
/// include `B` and `A`. Overlapping images of basic sets are merged.
pub fn quotient_sring(a: &SRing, section: &Section) -> Result<SRing> {
    let g = a.group();
    if section.top.iter().any(|x| x >= g.order()) {
        return Err(Error::NotASection("section of a different group".into()));
    }
    for (name, set) in [("top", section.top), ("bottom", section.bottom)] {
        if !a.is_a_set(set) {
            return Err(Error::NotASection(format!("{name} {set:?}")));
        }
    }
    let images: Vec<GroupSubset> = a
        .classes()
        .iter()
        .filter(|c| c.is_subset(section.top))
        .map(|&c| section.project_set(c))
        .collect();
    let mut merged: Vec<GroupSubset> = Vec::new();
    for img in images {
        let mut acc = img;
        // absorbing a part may create overlaps with parts already kept
        loop {
            let before = merged.len();
            merged.retain(|&m| {
                if m.is_disjoint(acc) {
                    true
                } else {
                    acc = acc.union(m);
                    false
                }
            });
            if merged.len() == before {
                break;
            }
        }
        merged.push(acc);
    }
    verify_sring(section.group.clone(), &merged)
}

/// `cyc(K, G)`: the orbits of a group `K` of automorphisms.
pub fn cyclotomic(group: Arc<FiniteGroup>, k: &PermGroup) -> Result<SRing> {
    if k.degree() != group.order() {
        return Err(Error::DegreeMismatch { expected: group.order(), found: k.degree() });
    }
    for gen in k.generators() {
        GroupAutomorphism::new(&group, gen.clone())?;
    }
    let classes: Vec<GroupSubset> = k.orbits().into_iter().map(|o| o.into_iter().collect()).collect();
    verify_sring(group, &classes)
}

/// `V(K, G)`: the orbits of the stabilizer `K_e` of a group `K` containing
/// every right translation.
pub fn from_perm_group(group: Arc<FiniteGroup>, k: &PermGroup) -> Result<SRing> {
    if k.degree() != group.order() {
        return Err(Error::DegreeMismatch { expected: group.order(), found: k.degree() });
    }
    if !group.generators().iter().all(|&s| k.contains(&group.right_multiplication(s))) {
        return Err(Error::MissingRegular);
    }
    let classes: Vec<GroupSubset> = k
        .point_stabilizer(0)
        .orbits()
        .into_iter()
        .map(|o| o.into_iter().collect())
        .collect();
    verify_sring(group, &classes)
}

/// The wreath product of `a_h` over `H` (given as the section `H/{e}`) and
/// `a_q` over `G/H`: the basic sets of `a_h` inside `H`, plus preimages of
/// the nonidentity basic sets of `a_q`.
///
/// With `H = {e}` or `H = G` the result is a copy of the single effective
/// operand.
pub fn wreath(group: Arc<FiniteGroup>, lower: &Section, a_h: &SRing, upper: &Section, a_q: &SRing) -> Result<SRing> {
    let h = lower.top;
    if lower.bottom != GroupSubset::singleton(0) {
        return Err(Error::NotASection("lower operand must be a section H/{e}".into()));
    }
    if upper.top != group.elements() || upper.bottom != h {
        return Err(Error::NotASection("upper operand must be the section G/H".into()));
    }
    if !group.normalizes(group.elements(), h) {
        return Err(Error::NotNormal);
    }
    if a_h.group().order() != lower.group.order() || a_q.group().order() != upper.group.order() {
        return Err(Error::InvalidArgument("operand S-rings live over other groups".into()));
    }
    let mut classes: Vec<GroupSubset> = a_h.classes().iter().map(|&c| lower.preimage(c)).collect();
    classes.extend(a_q.classes()[1..].iter().map(|&c| upper.preimage(c)));
    verify_sring(group, &classes)
}

/// The rank-4 S-ring with basic sets `{e}`, `A#`, `bD`, `b(A \ D)` over the
/// dihedral group of order `2p`, for `D` a subset of the rotations `A`
/// (as exponents of `a`). It is an S-ring exactly when `D` is a difference
/// set in `A`.
pub fn from_difference_set(group: Arc<FiniteGroup>, d: GroupSubset) -> Result<SRing> {
    let p = group
        .dihedral_p()
        .ok_or_else(|| Error::InvalidArgument("A(D) needs a dihedral group".into()))?;
    let rotations = GroupSubset::full(p);
    if !d.is_subset(rotations) {
        return Err(Error::InvalidArgument("D must consist of rotations".into()));
    }
    if d.len() < 2 || d.len() + 2 > p {
        return Err(Error::InvalidArgument(format!("|D| = {} outside [2, p-2]", d.len())));
    }
    // b a^d = a^-d b, which has index p + (-d mod p)
    let times_b = |s: GroupSubset| -> GroupSubset { s.iter().map(|x| p + (p - x) % p).collect() };
    let classes = [
        GroupSubset::singleton(0),
        rotations.difference(GroupSubset::singleton(0)),
        times_b(d),
        times_b(rotations.difference(d)),
    ];
    verify_sring(group, &classes).map_err(|e| match e {
        Error::Axiom(_) => Error::NotADifferenceSet,
        other => other,
    })
}

impl SRing {
    /// Whether every basic set outside the normal A-subgroup `h` is a union
    /// of `h`-cosets.
    pub fn is_wreath_over(&self, h: GroupSubset) -> Result<bool> {
        let g = self.group();
        if !g.is_subgroup(h) {
            return Err(Error::NotASubgroup);
        }
        if !self.is_a_set(h) {
            return Err(Error::NotAnASet);
        }
        if !g.normalizes(g.elements(), h) {
            return Err(Error::NotNormal);
        }
        Ok(self
            .classes()
            .iter()
            .filter(|c| !c.is_subset(h))
            .all(|&c| h.iter().all(|x| g.left_translate(x, c) == c && g.right_translate(c, x) == c)))
    }
}
