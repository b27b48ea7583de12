//! Small finite groups given by full multiplication tables.
//!
//! Elements are indices `0..n` with the identity fixed at `0`. Cyclic groups
//! use `i <-> a^i`; the dihedral group of order `2p` uses `i <-> a^i` for
//! `i < p` and `p + i <-> a^i b`. Products are read left to right: the index
//! of `x*y` is `mul(x, y)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::permgrp::{PermGroup, Permutation};

/// Largest group order any routine in this crate accepts (width of [`GroupSubset`]).
pub const MAX_ORDER: usize = 128;

/// A subset of a group's element indices, stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSubset(u128);

impl GroupSubset {
    pub const EMPTY: GroupSubset = GroupSubset(0);

    pub fn from_bits(bits: u128) -> Self {
        GroupSubset(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ORDER);
        if n == 128 {
            GroupSubset(u128::MAX)
        } else {
            GroupSubset((1u128 << n) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        GroupSubset(1u128 << x)
    }

    pub fn contains(self, x: usize) -> bool {
        x < MAX_ORDER && self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: usize) {
        self.0 |= 1u128 << x;
    }

    pub fn remove(&mut self, x: usize) {
        self.0 &= !(1u128 << x);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn least(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        GroupSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        GroupSubset(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        GroupSubset(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for GroupSubset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = GroupSubset::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the members of a [`GroupSubset`].
pub struct SubsetIter(u128);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum GroupKind {
    Cyclic,
    Dihedral,
    Generic,
}

/// Group spec strings: `C:n` for the cyclic group of order `n`, `D:2p` for
/// the dihedral group of order `2p` (p odd). `T:n` names a table-defined group
/// and is printed but never parsed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Table(usize),
}

impl GroupSpec {
    pub fn order(self) -> usize {
        match self {
            GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) | GroupSpec::Table(n) => n,
        }
    }

    pub fn build(self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => make_cyclic(n),
            GroupSpec::Dihedral(n) => make_dihedral(n / 2),
            GroupSpec::Table(_) => Err(Error::InvalidSpec(self.to_string())),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D:{n}"),
            GroupSpec::Table(n) => write!(f, "T:{n}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSpec(s.to_string());
        let (kind, num) = s.trim().split_once(':').ok_or_else(bad)?;
        let n: usize = num.trim().parse().map_err(|_| bad())?;
        if n == 0 || n > MAX_ORDER {
            return Err(bad());
        }
        match kind.trim() {
            "C" | "c" => Ok(GroupSpec::Cyclic(n)),
            "D" | "d" if n % 2 == 0 && (n / 2) % 2 == 1 && n / 2 >= 3 => Ok(GroupSpec::Dihedral(n)),
            _ => Err(bad()),
        }
    }
}

/// A finite group with its full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u8>,
    inv: Vec<u8>,
    kind: GroupKind,
    generators: Vec<usize>,
    spec: GroupSpec,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({})", self.spec)
    }
}

impl FiniteGroup {
    /// Builds a group from a multiplication table, checking the group axioms.
    /// Element `0` must be the identity.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderCap { order: n, max: MAX_ORDER });
        }
        let mut mul = vec![0u8; n * n];
        for (x, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument("table is not square".into()));
            }
            let mut seen = GroupSubset::EMPTY;
            for (y, &z) in row.iter().enumerate() {
                if z >= n || seen.contains(z) {
                    return Err(Error::InvalidArgument(format!("row {x} is not a permutation")));
                }
                seen.insert(z);
                mul[x * n + y] = z as u8;
            }
        }
        for y in 0..n {
            let col: GroupSubset = (0..n).map(|x| mul[x * n + y] as usize).collect();
            if col.len() != n {
                return Err(Error::InvalidArgument(format!("column {y} is not a permutation")));
            }
        }
        for x in 0..n {
            if mul[x] as usize != x || mul[x * n] as usize != x {
                return Err(Error::InvalidArgument("element 0 is not the identity".into()));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = mul[x * n + y] as usize;
                for z in 0..n {
                    let yz = mul[y * n + z] as usize;
                    if mul[xy * n + z] != mul[x * n + yz] {
                        return Err(Error::InvalidArgument(format!(
                            "associativity fails at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        let mut g = FiniteGroup {
            order: n,
            mul,
            inv: vec![0; n],
            kind: GroupKind::Generic,
            generators: Vec::new(),
            spec: GroupSpec::Table(n),
        };
        g.fill_inverses();
        g.generators = g.greedy_generators();
        Ok(g)
    }

    fn fill_inverses(&mut self) {
        let n = self.order;
        for x in 0..n {
            let y = (0..n).find(|&y| self.mul[x * n + y] == 0).expect("Latin square");
            self.inv[x] = y as u8;
        }
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = GroupSubset::singleton(0);
        for x in 0..self.order {
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(span.union(GroupSubset::singleton(x)));
            }
        }
        gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    /// Generators recorded with the presentation (`a` for cyclic, `a, b` for dihedral).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> GroupSubset {
        GroupSubset::full(self.order)
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    /// For a dihedral group of order `2p`, returns `p`.
    pub fn dihedral_p(&self) -> Option<usize> {
        (self.kind == GroupKind::Dihedral).then_some(self.order / 2)
    }

    /// Human-readable name of an element (`e`, `a^3`, `a^2 b`, or `#7`).
    pub fn element_name(&self, x: usize) -> String {
        match self.kind {
            _ if x == 0 => "e".into(),
            GroupKind::Cyclic => format!("a^{x}"),
            GroupKind::Dihedral => {
                let p = self.order / 2;
                if x < p {
                    format!("a^{x}")
                } else if x == p {
                    "b".into()
                } else {
                    format!("a^{} b", x - p)
                }
            }
            GroupKind::Generic => format!("#{x}"),
        }
    }

    /// The subgroup generated by `set` (as a set).
    pub fn closure(&self, set: GroupSubset) -> GroupSubset {
        let mut span = set.union(GroupSubset::singleton(0));
        let gens: Vec<usize> = set.iter().filter(|&x| x != 0).collect();
        let mut queue: VecDeque<usize> = span.iter().collect();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !span.contains(y) {
                    span.insert(y);
                    queue.push_back(y);
                }
            }
        }
        span
    }

    pub fn inverse_set(&self, set: GroupSubset) -> GroupSubset {
        set.iter().map(|x| self.inv(x)).collect()
    }

    /// `{x*g : x in set}`.
    pub fn right_translate(&self, set: GroupSubset, g: usize) -> GroupSubset {
        set.iter().map(|x| self.mul(x, g)).collect()
    }

    /// `{g*x : x in set}`.
    pub fn left_translate(&self, g: usize, set: GroupSubset) -> GroupSubset {
        set.iter().map(|x| self.mul(g, x)).collect()
    }

    /// The product set `XY` (without multiplicities).
    pub fn product_set(&self, x: GroupSubset, y: GroupSubset) -> GroupSubset {
        let mut out = GroupSubset::EMPTY;
        for a in x.iter() {
            for b in y.iter() {
                out.insert(self.mul(a, b));
            }
        }
        out
    }

    pub fn is_subgroup(&self, set: GroupSubset) -> bool {
        set.contains(0) && self.closure(set) == set
    }

    /// Whether `h` is normalized by every element of `by`.
    pub fn normalizes(&self, by: GroupSubset, h: GroupSubset) -> bool {
        by.iter().all(|g| {
            let gi = self.inv(g);
            h.iter().all(|x| h.contains(self.mul(self.mul(g, x), gi)))
        })
    }

    pub fn subgroup(&self, set: GroupSubset) -> Result<Subgroup> {
        if !self.is_subgroup(set) {
            return Err(Error::NotASubgroup);
        }
        Ok(Subgroup {
            elements: set,
            normal: self.normalizes(self.elements(), set),
        })
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: GroupSubset::singleton(0),
            normal: true,
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: self.elements(),
            normal: true,
        }
    }

    /// The index-2 rotation subgroup `<a>` of a dihedral group.
    pub fn rotation_subgroup(&self) -> Option<Subgroup> {
        let p = self.dihedral_p()?;
        Some(Subgroup {
            elements: GroupSubset::full(p),
            normal: true,
        })
    }

    /// Right multiplication by `g` as a permutation of the element indices.
    pub fn right_multiplication(&self, g: usize) -> Permutation {
        Permutation::from_images_unchecked((0..self.order).map(|x| self.mul(x, g) as u32).collect())
    }
}

/// The cyclic group `C_n`.
pub fn make_cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidArgument("cyclic group of order 0".into()));
    }
    if n > MAX_ORDER {
        return Err(Error::OrderCap { order: n, max: MAX_ORDER });
    }
    let mut mul = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = ((i + j) % n) as u8;
        }
    }
    let inv = (0..n).map(|i| ((n - i) % n) as u8).collect();
    Ok(FiniteGroup {
        order: n,
        mul,
        inv,
        kind: GroupKind::Cyclic,
        generators: if n > 1 { vec![1] } else { vec![] },
        spec: GroupSpec::Cyclic(n),
    })
}

/// The dihedral group `<a, b : a^p = b^2 = e, a^b = a^-1>` of order `2p`.
pub fn make_dihedral(p: usize) -> Result<FiniteGroup> {
    if p < 3 || p % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "dihedral group needs odd p >= 3, got {p}"
        )));
    }
    let n = 2 * p;
    if n > MAX_ORDER {
        return Err(Error::OrderCap { order: n, max: MAX_ORDER });
    }
    // (a^i b^s)(a^j b^t) = a^(i + (-1)^s j) b^(s+t)
    let decode = |x: usize| (x % p, x / p);
    let encode = |i: usize, s: usize| s * p + i;
    let mut mul = vec![0u8; n * n];
    for x in 0..n {
        let (i, s) = decode(x);
        for y in 0..n {
            let (j, t) = decode(y);
            let k = if s == 0 { (i + j) % p } else { (i + p - j) % p };
            mul[x * n + y] = encode(k, (s + t) % 2) as u8;
        }
    }
    let inv = (0..n)
        .map(|x| {
            let (i, s) = decode(x);
            if s == 0 {
                ((p - i) % p) as u8
            } else {
                x as u8
            }
        })
        .collect();
    Ok(FiniteGroup {
        order: n,
        mul,
        inv,
        kind: GroupKind::Dihedral,
        generators: vec![1, p],
        spec: GroupSpec::Dihedral(n),
    })
}

/// A subgroup together with its normality flag in the whole group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub elements: GroupSubset,
    pub normal: bool,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

fn check_cap(g: &FiniteGroup) -> Result<()> {
    if g.order() > MAX_ORDER {
        return Err(Error::OrderCap { order: g.order(), max: MAX_ORDER });
    }
    Ok(())
}

/// Every subgroup exactly once, sorted by order and then by element list.
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    check_cap(g)?;
    let mut found: BTreeSet<GroupSubset> = (0..g.order())
        .map(|x| g.closure(GroupSubset::singleton(x)))
        .collect();
    let cyclic: Vec<GroupSubset> = found.iter().copied().collect();
    // Joins with cyclic subgroups reach every subgroup.
    let mut frontier: Vec<GroupSubset> = cyclic.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &h in &frontier {
            for &c in &cyclic {
                if c.is_subset(h) {
                    continue;
                }
                let j = g.closure(h.union(c));
                if found.insert(j) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut subs: Vec<Subgroup> = found
        .into_iter()
        .map(|s| Subgroup {
            elements: s,
            normal: g.normalizes(g.elements(), s),
        })
        .collect();
    subs.sort_by_key(|s| (s.order(), s.elements.to_vec()));
    Ok(subs)
}

/// A group automorphism, as a permutation of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAutomorphism(Permutation);

impl GroupAutomorphism {
    pub fn new(g: &FiniteGroup, perm: Permutation) -> Result<Self> {
        if perm.degree() != g.order() {
            return Err(Error::DegreeMismatch { expected: g.order(), found: perm.degree() });
        }
        for x in 0..g.order() {
            for y in 0..g.order() {
                if perm.apply(g.mul(x, y)) != g.mul(perm.apply(x), perm.apply(y)) {
                    return Err(Error::NotAnAutomorphism { x, y });
                }
            }
        }
        Ok(GroupAutomorphism(perm))
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0.apply(x)
    }

    pub fn permutation(&self) -> &Permutation {
        &self.0
    }

    pub fn into_permutation(self) -> Permutation {
        self.0
    }
}

/// Tries to extend `gens[i] -> images[i]` to an automorphism.
fn extend_to_automorphism(g: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<u32>> {
    let n = g.order();
    let mut f = vec![u32::MAX; n];
    let mut used = GroupSubset::EMPTY;
    f[0] = 0;
    used.insert(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = f[x] as usize;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = g.mul(fx, t);
            if f[y] == u32::MAX {
                if used.contains(fy) {
                    return None;
                }
                f[y] = fy as u32;
                used.insert(fy);
                queue.push_back(y);
            } else if f[y] as usize != fy {
                return None;
            }
        }
    }
    f.iter().all(|&v| v != u32::MAX).then_some(f)
}

/// Every automorphism of `g`, sorted by image list. Brute force over
/// images of the presentation generators.
pub fn all_automorphisms(g: &FiniteGroup) -> Result<Vec<GroupAutomorphism>> {
    check_cap(g)?;
    let gens = g.generators().to_vec();
    let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| (0..g.order()).filter(|&x| orders[x] == orders[s]).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, v)| v[c]).collect();
        if let Some(f) = extend_to_automorphism(g, &gens, &images) {
            out.push(GroupAutomorphism(Permutation::from_images_unchecked(f)));
        }
        // odometer
        let mut i = 0;
        loop {
            if i == gens.len() {
                out.sort_by(|a, b| a.0.images().cmp(b.0.images()));
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// `Aut(G)` as a permutation group on element indices.
pub fn automorphism_group(g: &FiniteGroup) -> Result<PermGroup> {
    let auts = all_automorphisms(g)?;
    PermGroup::from_generators(g.order(), auts.into_iter().map(|a| a.0).collect())
}

/// A section `B/A` of a group: the quotient group together with the
/// canonical epimorphism `pi: B -> B/A`.
#[derive(Clone, Debug)]
pub struct Section {
    pub group: Arc<FiniteGroup>,
    pub top: GroupSubset,
    pub bottom: GroupSubset,
    proj: Vec<Option<u8>>,
}

impl Section {
    /// `pi(x)` for `x` in the top group.
    pub fn project(&self, x: usize) -> Option<usize> {
        self.proj.get(x).copied().flatten().map(usize::from)
    }

    pub fn project_set(&self, set: GroupSubset) -> GroupSubset {
        set.iter().filter_map(|x| self.project(x)).collect()
    }

    /// `pi^-1(set)`.
    pub fn preimage(&self, set: GroupSubset) -> GroupSubset {
        self.proj
            .iter()
            .enumerate()
            .filter_map(|(x, &q)| q.filter(|&q| set.contains(q as usize)).map(|_| x))
            .collect()
    }
}

/// The quotient `B/A` with its epimorphism table. Cyclic quotients are
/// relabelled to the standard `C_k` indexing.
pub fn quotient_group(g: &FiniteGroup, top: &Subgroup, bottom: &Subgroup) -> Result<Section> {
    check_cap(g)?;
    let (b, a) = (top.elements, bottom.elements);
    if !g.is_subgroup(b) || !g.is_subgroup(a) {
        return Err(Error::NotASubgroup);
    }
    if !a.is_subset(b) {
        return Err(Error::InvalidArgument("bottom is not contained in top".into()));
    }
    if !g.normalizes(b, a) {
        return Err(Error::NotNormal);
    }
    let mut proj: Vec<Option<u8>> = vec![None; g.order()];
    let mut reps = Vec::new();
    for x in b.iter() {
        if proj[x].is_none() {
            let idx = reps.len() as u8;
            for y in g.left_translate(x, a).iter() {
                proj[y] = Some(idx);
            }
            reps.push(x);
        }
    }
    let k = reps.len();
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&x| reps.iter().map(|&y| proj[g.mul(x, y)].unwrap() as usize).collect())
        .collect();
    let mut quotient = FiniteGroup::from_table(&table)?;
    if let Some(gen) = (0..k).find(|&x| quotient.element_order(x) == k) {
        // relabel gen^i -> i
        let mut relabel = vec![0usize; k];
        let mut y = 0;
        for i in 0..k {
            relabel[y] = i;
            y = quotient.mul(y, gen);
        }
        for p in proj.iter_mut().flatten() {
            *p = relabel[*p as usize] as u8;
        }
        quotient = make_cyclic(k)?;
    }
    Ok(Section {
        group: Arc::new(quotient),
        top: b,
        bottom: a,
        proj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_subgroup_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        (0u128..(1u128 << n))
            .filter(|bits| bits & 1 == 1)
            .filter(|&bits| {
                let s = GroupSubset::from_bits(bits);
                s.iter().all(|x| s.iter().all(|y| s.contains(g.mul(x, y))))
            })
            .count()
    }

    #[test]
    fn cyclic_basics() {
        let c1 = make_cyclic(1).unwrap();
        assert_eq!(c1.inv(0), 0);
        let c13 = make_cyclic(13).unwrap();
        assert_eq!(c13.mul(1, 12), 0);
        let c29 = make_cyclic(29).unwrap();
        // 2 is a primitive root mod 29: multiplication by 2 has order 28 in Z_29^*
        let mut x = 2u64;
        let mut k = 1;
        while x != 1 {
            x = x * 2 % 29;
            k += 1;
        }
        assert_eq!(k, 28);
        assert_eq!(c29.element_order(2), 29);
    }

    #[test]
    fn dihedral_relations() {
        let d6 = make_dihedral(3).unwrap();
        assert_eq!(d6.order(), 6);
        assert_eq!(d6.element_order(3), 2);
        let d26 = make_dihedral(13).unwrap();
        assert_eq!(d26.mul(13, 1), 25);
        let d38 = make_dihedral(19).unwrap();
        let involutions = (0..38).filter(|&x| d38.element_order(x) == 2).count();
        assert_eq!(involutions, 19);
        assert!(make_dihedral(4).is_err());
    }

    #[test]
    fn group_axioms_hold() {
        for g in [make_cyclic(12).unwrap(), make_dihedral(7).unwrap()] {
            let n = g.order();
            for x in 0..n {
                assert_eq!(g.mul(x, g.inv(x)), 0);
                assert_eq!(g.mul(0, x), x);
                for y in 0..n {
                    for z in 0..n {
                        assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn dihedral_reflection_shift_is_automorphism() {
        for p in [3usize, 5, 7, 11, 13, 31] {
            let g = make_dihedral(p).unwrap();
            for i in 0..p {
                let f = extend_to_automorphism(&g, &[1, p], &[1, p + i]);
                assert!(f.is_some(), "p={p} i={i}");
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&make_cyclic(13).unwrap()).unwrap().len(), 2);
        assert_eq!(all_subgroups(&make_dihedral(13).unwrap()).unwrap().len(), 16);
        assert_eq!(all_subgroups(&make_dihedral(3).unwrap()).unwrap().len(), 6);
        for g in [
            make_cyclic(12).unwrap(),
            make_dihedral(5).unwrap(),
            make_dihedral(7).unwrap(),
            make_cyclic(16).unwrap(),
        ] {
            let subs = all_subgroups(&g).unwrap();
            assert_eq!(subs.len(), naive_subgroup_count(&g), "{g:?}");
            for s in &subs {
                assert!(g.is_subgroup(s.elements));
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(all_automorphisms(&make_cyclic(13).unwrap()).unwrap().len(), 12);
        assert_eq!(all_automorphisms(&make_dihedral(13).unwrap()).unwrap().len(), 156);
        assert_eq!(all_automorphisms(&make_cyclic(1).unwrap()).unwrap().len(), 1);
        let euler = |n: usize| (1..=n).filter(|&k| gcd(k, n) == 1).count();
        for n in 1..=64 {
            let g = make_cyclic(n).unwrap();
            let order = automorphism_group(&g).unwrap().order().clone();
            assert_eq!(order, euler(n).into(), "n={n}");
        }
    }

    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn quotients() {
        let d26 = make_dihedral(13).unwrap();
        let a = d26.rotation_subgroup().unwrap();
        let s = quotient_group(&d26, &d26.whole(), &a).unwrap();
        assert_eq!(s.group.spec(), GroupSpec::Cyclic(2));
        let c13 = make_cyclic(13).unwrap();
        let s = quotient_group(&c13, &c13.whole(), &c13.whole()).unwrap();
        assert_eq!(s.group.order(), 1);
        let d6 = make_dihedral(3).unwrap();
        let s = quotient_group(&d6, &d6.whole(), &d6.rotation_subgroup().unwrap()).unwrap();
        for x in 3..6 {
            assert_eq!(s.project(x), Some(1));
        }
        let refl = d6.subgroup(GroupSubset::from_iter([0, 3])).unwrap();
        assert!(!refl.normal);
        assert_eq!(quotient_group(&d6, &d6.whole(), &refl).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn spec_parsing() {
        assert_eq!("D:26".parse::<GroupSpec>().unwrap(), GroupSpec::Dihedral(26));
        assert_eq!("C:7".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(7));
        for bad in ["D:35", "", "C:", "X:4", "D:4", "C:0", "C:-3"] {
            assert!(bad.parse::<GroupSpec>().is_err(), "{bad}");
        }
    }
}
